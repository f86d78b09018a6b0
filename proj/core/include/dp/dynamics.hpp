#pragma once

#include "dp/admissible.hpp"
#include "dp/grid.hpp"

#include <vector>

namespace dp {

struct EvolutionConfig {
    double t_end = 5.0;
    double cfl = 0.3;              // advective CFL fraction in (0, 1]
    double filter_strength = 36.0; // 36th-order exponential filter coefficient
    int monitor_stride = 20;

    void validate() const;
};

/// Time series of the conserved quantities and stability monitors.
struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> E_series, F_series;
    std::vector<double> xi_series, M_series, delta_series;
    std::vector<double> h_distance_series;
    std::vector<double> min_y_series;
    bool aborted = false;
};

/// Right side of u_t = -1/2 dx(u^2) - 3/2 (1-dxx)^{-1} dx(u^2), with the
/// quadratic term dealiased by the 2/3 rule.
GridFunction dp_rhs(const GridFunction& u);

/// Classical four-stage Runge-Kutta update followed by the exponential
/// spectral filter. Throws when dt exceeds the advective bound h/max|u|.
GridFunction step_rk4(const GridFunction& u, double dt, double filter_strength = 36.0);

/// Integrates mollified initial data y0 (atoms widened to Gaussians of width
/// 4h) to t_end, recording monitors every monitor_stride steps. xi is
/// unwrapped across the periodic seam. Aborts with a partial trace when
/// |u| exceeds 10^3 times its initial maximum.
EvolutionTrace evolve(const MeasureData& y0, double c_ref, const EvolutionConfig& cfg);

} // namespace dp
