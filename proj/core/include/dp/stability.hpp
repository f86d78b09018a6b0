#pragma once

#include "dp/grid.hpp"
#include "dp/helmholtz.hpp"

#include <string>
#include <vector>

namespace dp {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval make(double lo, double hi);
    double length() const { return hi - lo; }
};

/// Location and value of the global maximum of v, refined below grid
/// resolution by a 3-point parabola through the peak node.
struct ModulationPoint {
    double xi = 0.0;
    double M = 0.0;
    double refinement = 0.0; // sub-grid offset in units of h
};

/// Grid argmax with parabolic refinement; ties break to the smallest x.
/// Throws "degenerate profile" on a constant input.
ModulationPoint locate_max(const GridFunction& v);

/// Number of local maxima of v inside the window, after a 3-node median
/// pre-smoothing pass; plateaus created by the smoothing count once.
int count_local_maxima(const GridFunction& v, const Interval& window);

/// |E(u) - E(phi_c) - ||u - phi_c(.-xi)||_H^2 - 4c (v(xi) - c/6)|,
/// with E(phi_c) = c^2/3 in closed form. Holds for any u and xi.
double quadratic_identity_residual(const GridFunction& u, double c, double xi);

/// Piecewise field 2v + v_xx -+ 3v_x with the sign switch at the node nearest
/// xi (the switch node takes the branch average).
GridFunction build_g(const GridFunction& v, const GridFunction& vx, const GridFunction& vxx,
                     double xi);
/// Piecewise field -v_xx -+ 6v_x + 16v with the same switch convention.
GridFunction build_h(const GridFunction& v, const GridFunction& vx, const GridFunction& vxx,
                     double xi);

/// |int g^2 - (E(u) - 12 M^2)|. Requires xi to be a critical point of v
/// (|v_x(xi)| <= 1e-6 * 6M enforced; 6M stands in for the wave speed).
double identity_g_residual(const GridFunction& u, double xi);

/// |int h g^2 - (F(u) - 144 M^3)|, same precondition.
double identity_h_residual(const GridFunction& u, double xi);

/// 18M - max h over the grid; nonnegative for admissible data near the
/// peakon, and ~0 at the peakon itself (the bound is tight there).
double h_bound_margin(const GridFunction& u, double xi, double c);

/// M^3 - E M / 4 + F / 72; nonpositive under the stability hypotheses.
double cubic_inequality_value(double E, double F, double M);

/// (M - c/6)^2 (M + c/3): the cubic at peakon energies, in factored form.
double peakon_cubic_factored(double M, double c);

/// c/300 minus the sup of v (resp. u) outside [xi - 6.7, xi + 6.7].
struct TailMargins {
    double v_margin = 0.0;
    double u_margin = 0.0;
};
TailMargins tail_bounds(const GridFunction& u, double xi, double c);

/// Sign-structure slacks of v_x and v_xx on the stability windows:
/// v_x >= 0 left of the concavity window, v_x <= 0 right of it, v_xx < 0 inside.
struct SignPattern {
    double vx_min_left = 0.0;   // min of v_x on [xi-6.7, xi-ln(sqrt 2)]
    double vx_max_right = 0.0;  // max of v_x on [xi+ln(sqrt 2), xi+6.7]
    double vxx_max_inner = 0.0; // max of v_xx on [xi-ln(sqrt 2), xi+ln(sqrt 2)]
};
SignPattern vx_sign_pattern(const GridFunction& u, double xi);

/// Everything the simplified stability argument measures on one snapshot.
struct StabilityReport {
    double E = 0.0, F = 0.0;
    double xi = 0.0, M = 0.0;
    double delta = 0.0; // c/6 - M
    double h_distance_to_peakon_at_xi = 0.0;
    double quadratic_identity_res = 0.0;
    double g_identity_residual = 0.0;
    double h_identity_residual = 0.0;
    double h_sup_margin = 0.0; // 18M - max h
    double cubic_value = 0.0;
    int local_max_count_on_theta = 0;
    TailMargins tail_margins;
    bool pass = false;
    std::vector<std::string> fail_reasons;
};

/// Assembles the full report for admissible u at reference speed c. The
/// certificate passes when the window holds a single maximum, every margin is
/// >= -1e-3 c (cone margins >= -1e-6 c), residuals are <= 1e-3 at their scale
/// and the cubic value is <= 1e-3 c^3.
StabilityReport stability_certificate(const GridFunction& u, double c);

} // namespace dp
