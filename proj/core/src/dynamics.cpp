#include "dp/dynamics.hpp"

#include "dp/fft.hpp"
#include "dp/functionals.hpp"
#include "dp/helmholtz.hpp"
#include "dp/stability.hpp"
#include "dp/waves.hpp"

#include <algorithm>
#include <string>

namespace dp {

void EvolutionConfig::validate() const {
    if (!(t_end > 0.0)) throw std::invalid_argument("EvolutionConfig: t_end must be > 0");
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw std::invalid_argument("EvolutionConfig: cfl must be in (0, 1]");
    if (filter_strength < 0.0)
        throw std::invalid_argument("EvolutionConfig: filter_strength must be >= 0");
    if (monitor_stride < 1)
        throw std::invalid_argument("EvolutionConfig: monitor_stride must be >= 1");
}

GridFunction dp_rhs(const GridFunction& u) {
    const UniformGrid& g = u.grid;
    const int n = g.n_points;

    std::vector<double> sq(n);
    for (int j = 0; j < n; ++j) sq[j] = u.values[j] * u.values[j];
    auto spec = fft::forward(sq);

    // 2/3-rule dealiasing of the quadratic product, then both transport
    // terms in one pass: -i kappa (1/2 + 3/(2(1+kappa^2))).
    const int cutoff = n / 3;
    for (int k = 0; k < static_cast<int>(spec.size()); ++k) {
        if (k > cutoff) {
            spec[k] = 0.0;
            continue;
        }
        const double kap = g.wavenumber(k);
        const double m = -kap * (0.5 + 1.5 / (1.0 + kap * kap));
        spec[k] *= std::complex<double>(0.0, m);
    }
    return GridFunction{g, fft::inverse(spec, n)};
}

namespace {

void apply_filter(GridFunction& u, double strength) {
    if (strength <= 0.0) return;
    const int n = u.grid.n_points;
    auto spec = fft::forward(u.values);
    const double kmax = static_cast<double>(n / 2);
    for (int k = 0; k < static_cast<int>(spec.size()); ++k) {
        const double r = k / kmax;
        double r2 = r * r;
        double r4 = r2 * r2;
        double r36 = r4 * r4 * r4 * r4 * r4 * r4 * r4 * r4 * r4; // r^36
        spec[k] *= std::exp(-strength * r36);
    }
    u.values = fft::inverse(spec, n);
}

} // namespace

GridFunction step_rk4(const GridFunction& u, double dt, double filter_strength) {
    const double umax = norms(u).linf;
    const double dt_max = u.grid.spacing() / std::max(umax, 1e-12);
    if (!(dt > 0.0) || dt > dt_max)
        throw std::invalid_argument("step_rk4: dt exceeds advective bound; admissible dt <= " +
                                    std::to_string(dt_max));

    GridFunction k1 = dp_rhs(u);
    GridFunction k2 = dp_rhs(u + (0.5 * dt) * k1);
    GridFunction k3 = dp_rhs(u + (0.5 * dt) * k2);
    GridFunction k4 = dp_rhs(u + dt * k3);

    GridFunction out = u;
    for (int j = 0; j < u.size(); ++j)
        out.values[j] += dt / 6.0 *
                         (k1.values[j] + 2.0 * k2.values[j] + 2.0 * k3.values[j] + k4.values[j]);
    apply_filter(out, filter_strength);
    return out;
}

namespace {

/// Atoms widened to discrete-mass-preserving Gaussians of width 4h, added to
/// the density part.
constexpr double kMollifierWidthCells = 4.0;

GridFunction mollified_momentum(const MeasureData& y0) {
    const UniformGrid& g = y0.density.grid;
    GridFunction dens = y0.density;
    const double w = kMollifierWidthCells * g.spacing();
    for (const Atom& a : y0.atoms) {
        if (a.mass < 0.0) throw std::invalid_argument("evolve: negative atom mass");
        std::vector<double> bump(g.n_points);
        double discrete_mass = 0.0;
        for (int j = 0; j < g.n_points; ++j) {
            const double d = g.wrap(g.x(j) - a.pos);
            bump[j] = std::exp(-d * d / (w * w));
            discrete_mass += bump[j];
        }
        discrete_mass *= g.spacing();
        for (int j = 0; j < g.n_points; ++j)
            dens.values[j] += a.mass * bump[j] / discrete_mass;
    }
    return dens;
}

// Pointwise y = (1-dx^2)u amplifies band-limited truncation error by kappa^2
// (~8e4 at N=8192), and the exact flow re-concentrates y below grid scale on
// t ~ w/c, so raw node values of y are meaningless after a short transient.
// Positivity of a measure means nonnegative pairings with nonnegative test
// functions; the monitor pairs y with Gaussians at the mollification width,
// the finest test the discretization represents.
double min_momentum_at_mollifier_scale(const GridFunction& u) {
    const UniformGrid& g = u.grid;
    const double w = kMollifierWidthCells * g.spacing();
    auto spec = fft::forward(u.values);
    for (int k = 0; k < static_cast<int>(spec.size()); ++k) {
        const double kap = g.wavenumber(k);
        spec[k] *= (1.0 + kap * kap) * std::exp(-0.25 * kap * kap * w * w);
    }
    GridFunction yw{g, fft::inverse(spec, g.n_points)};
    return min_value(yw);
}

} // namespace

EvolutionTrace evolve(const MeasureData& y0, double c_ref, const EvolutionConfig& cfg) {
    cfg.validate();
    if (!(c_ref > 0.0)) throw std::invalid_argument("evolve: c_ref must be > 0");
    if (!(y0.total_mass() > 0.0)) throw std::invalid_argument("evolve: zero total mass");

    const UniformGrid& g = y0.density.grid;
    GridFunction dens = mollified_momentum(y0);
    for (double v : dens.values)
        if (v < 0.0) throw std::invalid_argument("evolve: negative density");
    GridFunction u = inv_helmholtz(HelmholtzKind::one, dens);

    const double u0max = norms(u).linf;
    const double blowup = 1e3 * u0max;

    EvolutionTrace trace;
    double xi_unwrapped = 0.0;
    bool have_xi = false;
    auto record = [&](double t) {
        GridFunction v = inv_helmholtz(HelmholtzKind::four, u);
        ModulationPoint mp = locate_max(v);
        if (!have_xi) {
            xi_unwrapped = mp.xi;
            have_xi = true;
        } else {
            xi_unwrapped += g.wrap(mp.xi - g.wrap(xi_unwrapped));
        }
        trace.times.push_back(t);
        trace.E_series.push_back(energy_E(u).primary);
        trace.F_series.push_back(energy_F(u).primary);
        trace.xi_series.push_back(xi_unwrapped);
        trace.M_series.push_back(mp.M);
        trace.delta_series.push_back(c_ref / 6.0 - mp.M);
        trace.h_distance_series.push_back(
            h_norm_distance(u, sample_peakon(g, c_ref, mp.xi)));
        trace.min_y_series.push_back(min_momentum_at_mollifier_scale(u));
    };

    record(0.0);
    double t = 0.0;
    double dt = cfg.cfl * g.spacing() / std::max(1.0, u0max);
    int step = 0;
    while (t < cfg.t_end - 1e-12) {
        if (step % 50 == 0)
            dt = cfg.cfl * g.spacing() / std::max(1.0, norms(u).linf);
        const double dt_step = std::min(dt, cfg.t_end - t);
        u = step_rk4(u, dt_step, cfg.filter_strength);
        t += dt_step;
        ++step;
        if (norms(u).linf > blowup) {
            trace.aborted = true;
            record(t);
            break;
        }
        if (step % cfg.monitor_stride == 0 || t >= cfg.t_end - 1e-12) record(t);
    }
    return trace;
}

} // namespace dp
