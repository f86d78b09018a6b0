#include "dp/stability.hpp"

#include "dp/admissible.hpp"
#include "dp/functionals.hpp"
#include "dp/waves.hpp"

#include <algorithm>
#include <limits>

namespace dp {

Interval Interval::make(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("Interval: lo must be < hi");
    return Interval{lo, hi};
}

ModulationPoint locate_max(const GridFunction& v) {
    const int n = v.size();
    int jmax = 0;
    for (int j = 1; j < n; ++j)
        if (v.values[j] > v.values[jmax]) jmax = j;
    const double vmax = v.values[jmax];
    const double vmin = min_value(v);
    if (vmax - vmin <= 1e-15 * std::max(1.0, std::abs(vmax)))
        throw std::invalid_argument("locate_max: degenerate profile");

    const double vm = v.values[(jmax + n - 1) % n];
    const double vp = v.values[(jmax + 1) % n];
    const double b = 0.5 * (vp - vm);
    const double a = 0.5 * (vp - 2.0 * vmax + vm);
    ModulationPoint mp;
    mp.M = vmax;
    if (a < 0.0) {
        mp.refinement = std::clamp(-b / (2.0 * a), -0.5, 0.5);
        mp.M = vmax - b * b / (4.0 * a);
    }
    mp.xi = v.grid.wrap(v.grid.x(jmax) + mp.refinement * v.grid.spacing());
    return mp;
}

namespace {

/// Plateau-aware maxima count over the node index range [j0, j0+len) taken
/// periodically, on median-3 smoothed values. A run of equal values counts as
/// one maximum when both distinct neighbors are lower.
int count_maxima_range(const std::vector<double>& w, int n, int j0, int len) {
    int count = 0;
    int i = 1;
    auto at = [&](int k) { return w[((j0 + k) % n + n) % n]; };
    while (i < len - 1) {
        int run_end = i;
        while (run_end + 1 < len - 1 && at(run_end + 1) == at(i)) ++run_end;
        const bool rising = at(i - 1) < at(i);
        const bool falling = run_end + 1 <= len - 1 && at(run_end + 1) < at(i);
        if (rising && falling) ++count;
        i = run_end + 1;
    }
    return count;
}

/// Circular variant for windows covering the whole domain: runs of equal
/// value are compared against their circular neighbors.
int count_maxima_circular(const std::vector<double>& w, int n) {
    std::vector<double> runs;
    for (int j = 0; j < n; ++j)
        if (runs.empty() || w[j] != runs.back()) runs.push_back(w[j]);
    if (runs.size() >= 2 && runs.front() == runs.back()) runs.pop_back();
    const int m = static_cast<int>(runs.size());
    if (m < 2) return 0;
    int count = 0;
    for (int i = 0; i < m; ++i)
        if (runs[i] > runs[(i + m - 1) % m] && runs[i] > runs[(i + 1) % m]) ++count;
    return count;
}

std::vector<double> median3(const GridFunction& v) {
    const int n = v.size();
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) {
        double a = v.values[(j + n - 1) % n], b = v.values[j], c = v.values[(j + 1) % n];
        w[j] = std::max(std::min(a, b), std::min(std::max(a, b), c));
    }
    return w;
}

} // namespace

int count_local_maxima(const GridFunction& v, const Interval& window) {
    const UniformGrid& g = v.grid;
    if (window.lo < -g.half_width || window.hi > g.half_width)
        throw std::invalid_argument("count_local_maxima: window outside domain");
    std::vector<double> w = median3(v);
    // First node at or after window.lo, last node at or before window.hi.
    const int j0 = static_cast<int>(std::ceil((window.lo + g.half_width) / g.spacing()));
    const int j1 = static_cast<int>(std::floor((window.hi + g.half_width) / g.spacing()));
    if (j1 - j0 + 1 >= g.n_points) return count_maxima_circular(w, g.n_points);
    if (j1 - j0 < 3) return 0;
    return count_maxima_range(w, g.n_points, j0, j1 - j0 + 1);
}

/// Same count on the window of wrapped distance <= radius around center.
static int count_local_maxima_around(const GridFunction& v, double center, double radius) {
    const UniformGrid& g = v.grid;
    std::vector<double> w = median3(v);
    const int len = 2 * static_cast<int>(std::floor(radius / g.spacing())) + 1;
    const int jc = static_cast<int>(std::llround((g.wrap(center) + g.half_width) / g.spacing()));
    const int j0 = jc - (len - 1) / 2;
    return count_maxima_range(w, g.n_points, j0, len);
}

double quadratic_identity_residual(const GridFunction& u, double c, double xi) {
    const double lhs = energy_E(u).primary - c * c / 3.0;
    GridFunction v = inv_helmholtz(HelmholtzKind::four, u);
    const double dist = h_norm_distance(u, sample_peakon(u.grid, c, u.grid.wrap(xi)));
    const double rhs = dist * dist + 4.0 * c * (eval_at(v, u.grid.wrap(xi)) - c / 6.0);
    return std::abs(lhs - rhs);
}

namespace {

GridFunction piecewise_switch(const GridFunction& even_part, const GridFunction& odd_part,
                              double xi) {
    // left branch: even - odd; right branch: even + odd; nearest node to xi
    // takes the branch average (the even part alone).
    const UniformGrid& g = even_part.grid;
    const int n = g.n_points;
    const int jswitch =
        ((static_cast<int>(std::llround((g.wrap(xi) + g.half_width) / g.spacing())) % n) + n) % n;
    GridFunction out = GridFunction::zero(g);
    for (int j = 0; j < n; ++j) {
        if (j == jswitch) {
            out.values[j] = even_part.values[j];
        } else {
            const double d = g.wrap(g.x(j) - xi);
            out.values[j] = even_part.values[j] + (d > 0.0 ? 1.0 : -1.0) * odd_part.values[j];
        }
    }
    return out;
}

} // namespace

GridFunction build_g(const GridFunction& v, const GridFunction& vx, const GridFunction& vxx,
                     double xi) {
    GridFunction even = GridFunction::zero(v.grid);
    for (int j = 0; j < v.size(); ++j)
        even.values[j] = 2.0 * v.values[j] + vxx.values[j];
    return piecewise_switch(even, 3.0 * vx, xi);
}

GridFunction build_h(const GridFunction& v, const GridFunction& vx, const GridFunction& vxx,
                     double xi) {
    GridFunction even = GridFunction::zero(v.grid);
    for (int j = 0; j < v.size(); ++j)
        even.values[j] = -vxx.values[j] + 16.0 * v.values[j];
    return piecewise_switch(even, 6.0 * vx, xi);
}

namespace {

struct IdentityContext {
    HelmholtzProfile p;
    double M;
    GridFunction g;
};

IdentityContext identity_context(const GridFunction& u, double xi) {
    HelmholtzProfile p = helmholtz_profile(u);
    const double M = eval_at(p.v, u.grid.wrap(xi));
    const double vx_at_xi = eval_at(p.vx, u.grid.wrap(xi));
    if (std::abs(vx_at_xi) > 1e-6 * 6.0 * std::abs(M))
        throw std::invalid_argument("xi is not a critical point");
    GridFunction g = build_g(p.v, p.vx, p.vxx, xi);
    return IdentityContext{std::move(p), M, std::move(g)};
}

} // namespace

double identity_g_residual(const GridFunction& u, double xi) {
    IdentityContext ctx = identity_context(u, xi);
    const double lhs = integrate(pointwise_mul(ctx.g, ctx.g));
    const double rhs = energy_E(u).primary - 12.0 * ctx.M * ctx.M;
    return std::abs(lhs - rhs);
}

double identity_h_residual(const GridFunction& u, double xi) {
    IdentityContext ctx = identity_context(u, xi);
    GridFunction h = build_h(ctx.p.v, ctx.p.vx, ctx.p.vxx, xi);
    const double lhs = integrate(pointwise_mul(h, pointwise_mul(ctx.g, ctx.g)));
    const double rhs = energy_F(u).primary - 144.0 * ctx.M * ctx.M * ctx.M;
    return std::abs(lhs - rhs);
}

double h_bound_margin(const GridFunction& u, double xi, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("h_bound_margin: c must be > 0");
    HelmholtzProfile p = helmholtz_profile(u);
    GridFunction h = build_h(p.v, p.vx, p.vxx, xi);
    const double M = eval_at(p.v, u.grid.wrap(xi));
    return 18.0 * M - max_value(h);
}

double cubic_inequality_value(double E, double F, double M) {
    return M * M * M - 0.25 * E * M + F / 72.0;
}

double peakon_cubic_factored(double M, double c) {
    const double d = M - c / 6.0;
    return d * d * (M + c / 3.0);
}

TailMargins tail_bounds(const GridFunction& u, double xi, double c) {
    GridFunction v = inv_helmholtz(HelmholtzKind::four, u);
    double sup_v = -std::numeric_limits<double>::infinity();
    double sup_u = sup_v;
    for (int j = 0; j < u.size(); ++j) {
        if (std::abs(u.grid.wrap(u.grid.x(j) - xi)) > kThetaHalfWidth) {
            sup_v = std::max(sup_v, v.values[j]);
            sup_u = std::max(sup_u, u.values[j]);
        }
    }
    return TailMargins{c / 300.0 - sup_v, c / 300.0 - sup_u};
}

SignPattern vx_sign_pattern(const GridFunction& u, double xi) {
    HelmholtzProfile p = helmholtz_profile(u);
    SignPattern s;
    s.vx_min_left = std::numeric_limits<double>::infinity();
    s.vx_max_right = -std::numeric_limits<double>::infinity();
    s.vxx_max_inner = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < u.size(); ++j) {
        const double d = u.grid.wrap(u.grid.x(j) - xi);
        if (d >= -kThetaHalfWidth && d <= -kConcavityHalfWidth)
            s.vx_min_left = std::min(s.vx_min_left, p.vx.values[j]);
        if (d >= kConcavityHalfWidth && d <= kThetaHalfWidth)
            s.vx_max_right = std::max(s.vx_max_right, p.vx.values[j]);
        if (std::abs(d) <= kConcavityHalfWidth)
            s.vxx_max_inner = std::max(s.vxx_max_inner, p.vxx.values[j]);
    }
    return s;
}

/// Critical point of v near xi0: bisection of the interpolated v_x over
/// [xi0 - h, xi0 + h]. Falls back to xi0 when no sign change brackets it.
static double refine_critical_point(const GridFunction& vx, double xi0) {
    const double h = vx.grid.spacing();
    auto f = [&](double x) { return eval_at(vx, vx.grid.wrap(x)); };
    double lo = xi0 - h, hi = xi0 + h;
    double flo = f(lo), fhi = f(hi);
    if (!(flo > 0.0 && fhi < 0.0)) return xi0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

StabilityReport stability_certificate(const GridFunction& u, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("stability_certificate: c must be > 0");
    u.validate();

    StabilityReport r;
    CertificateReport cone = cone_check(u);
    HelmholtzProfile p = helmholtz_profile(u);

    ModulationPoint mp = locate_max(p.v);
    r.xi = mp.xi;
    r.M = mp.M;
    r.delta = c / 6.0 - mp.M;

    EnergyPair E = energy_E(u), F = energy_F(u);
    r.E = E.primary;
    r.F = F.primary;
    r.h_distance_to_peakon_at_xi = h_norm_distance(u, sample_peakon(u.grid, c, r.xi));
    r.quadratic_identity_res = quadratic_identity_residual(u, c, r.xi);

    // The g/h identities require an exact critical point; the parabolic xi
    // leaves |v_x| ~ h^2 c, so polish it on the interpolated derivative.
    const double xi_crit = refine_critical_point(p.vx, mp.xi);
    try {
        r.g_identity_residual = identity_g_residual(u, xi_crit);
        r.h_identity_residual = identity_h_residual(u, xi_crit);
    } catch (const std::invalid_argument& e) {
        r.g_identity_residual = r.h_identity_residual = std::numeric_limits<double>::infinity();
        r.fail_reasons.push_back(std::string("identity precondition: ") + e.what());
    }
    r.h_sup_margin = h_bound_margin(u, xi_crit, c);
    r.cubic_value = cubic_inequality_value(r.E, r.F, r.M);
    r.local_max_count_on_theta = count_local_maxima_around(p.v, r.xi, kThetaHalfWidth);
    r.tail_margins = tail_bounds(u, r.xi, c);

    const double tol_c = 1e-3 * c;
    const double tol_c2 = 1e-3 * c * c;
    const double tol_c3 = 1e-3 * c * c * c;
    auto fail = [&](const std::string& why) { r.fail_reasons.push_back(why); };
    if (cone.u_slope.margin < -1e-6 * c) fail("cone violation: u - |u_x| < 0");
    if (cone.v_slope.margin < -1e-6 * c) fail("cone violation: 2v - |v_x| < 0");
    if (cone.u_vs_6v.margin < -1e-6 * c) fail("cone violation: u > 6v");
    if (r.local_max_count_on_theta != 1) fail("window does not hold a single maximum");
    if (r.quadratic_identity_res > tol_c2) fail("quadratic identity residual above tolerance");
    if (r.g_identity_residual > tol_c2) fail("g identity residual above tolerance");
    if (r.h_identity_residual > tol_c3) fail("h identity residual above tolerance");
    if (r.h_sup_margin < -tol_c) fail("h exceeds 18M");
    if (r.cubic_value > tol_c3) fail("cubic inequality violated");
    if (r.tail_margins.v_margin < -tol_c) fail("v tail above c/300");
    if (r.tail_margins.u_margin < -tol_c) fail("u tail above c/300");
    r.pass = r.fail_reasons.empty();
    return r;
}

} // namespace dp
