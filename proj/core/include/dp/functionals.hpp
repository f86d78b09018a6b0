#pragma once

#include "dp/grid.hpp"

namespace dp {

struct MeasureData;

/// A conserved quantity computed along two discretization routes; the gap is
/// a quadrature-consistency diagnostic, not part of the value contract.
struct EnergyPair {
    double primary = 0.0;
    double alt = 0.0;
    double gap() const { return std::abs(primary - alt); }
};

/// E(u) = int y v = int (4v^2 + 5v_x^2 + v_xx^2).
/// primary: the v-form via Helmholtz multipliers (no derivative of u).
/// alt: int y v with y = (1 - dxx) u by second-order finite differences, an
/// independent real-space route that recovers atoms weakly.
EnergyPair energy_E(const GridFunction& u);

/// F(u) = int u^3 = int (-v_xx^3 + 12 v v_xx^2 - 48 v^2 v_xx + 64 v^3).
/// primary: int u^3; alt: the v-polynomial form.
EnergyPair energy_F(const GridFunction& u);

/// int y v for explicit measure data: sum of mass_i * v(pos_i) plus the
/// density pairing. Matches energy_E on synthesized u.
double energy_E_measure(const MeasureData& y, const GridFunction& u);

/// ||u||_H = sqrt(E(u)), the norm equivalent to L2.
double h_norm(const GridFunction& u);
double h_norm_distance(const GridFunction& u, const GridFunction& w);

/// Sup-norm distances to the peakon pair at center z:
/// ||u - phi_c||_inf and ||d^k (v - rho_c)||_inf for k = 0, 1, 2.
struct CkDistances {
    double c0_u = 0.0;
    double c0_v = 0.0;
    double c1_v = 0.0;
    double c2_v = 0.0;
};
CkDistances ck_distances(const GridFunction& u, double c, double z);

} // namespace dp
