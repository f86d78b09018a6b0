#include "dp/admissible.hpp"

#include "dp/functionals.hpp"
#include "dp/helmholtz.hpp"
#include "dp/waves.hpp"

#include <algorithm>
#include <string>

namespace dp {

double MeasureData::total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms) m += a.mass;
    if (!density.values.empty()) m += integrate(density);
    return m;
}

GridFunction synthesize_u(const MeasureData& y) {
    const UniformGrid& g = y.density.grid;
    for (size_t i = 0; i < y.atoms.size(); ++i) {
        if (y.atoms[i].mass < 0.0)
            throw std::invalid_argument("synthesize_u: negative mass at atom " + std::to_string(i));
        if (y.atoms[i].pos < -g.half_width || y.atoms[i].pos >= g.half_width)
            throw std::invalid_argument("synthesize_u: atom " + std::to_string(i) +
                                        " outside [-L, L)");
    }
    for (int j = 0; j < y.density.size(); ++j)
        if (y.density.values[j] < 0.0)
            throw std::invalid_argument("synthesize_u: negative density at node " +
                                        std::to_string(j));
    if (!(y.total_mass() > 0.0))
        throw std::invalid_argument("synthesize_u: zero total mass");

    GridFunction u = GridFunction::zero(g);
    const double sinhL = std::sinh(g.half_width);
    for (const Atom& a : y.atoms) {
        for (int j = 0; j < g.n_points; ++j) {
            const double d = std::abs(g.wrap(g.x(j) - a.pos));
            u.values[j] += 0.5 * a.mass * std::cosh(g.half_width - d) / sinhL;
        }
    }
    bool has_density = false;
    for (double v : y.density.values)
        if (v != 0.0) { has_density = true; break; }
    if (has_density) u = u + inv_helmholtz(HelmholtzKind::one, y.density);
    return u;
}

namespace {

ConeMargin min_margin(const GridFunction& slack) {
    ConeMargin m{slack.values[0], slack.grid.x(0)};
    for (int j = 1; j < slack.size(); ++j) {
        if (slack.values[j] < m.margin) {
            m.margin = slack.values[j];
            m.location = slack.grid.x(j);
        }
    }
    return m;
}

} // namespace

CertificateReport cone_check(const GridFunction& u) {
    const UniformGrid& g = u.grid;
    const int n = g.n_points;
    const double h = g.spacing();

    GridFunction v = inv_helmholtz(HelmholtzKind::four, u);
    GridFunction vx = inv_helmholtz_dx(HelmholtzKind::four, u);

    GridFunction su = GridFunction::zero(g);
    GridFunction sv = GridFunction::zero(g);
    GridFunction s6 = GridFunction::zero(g);
    for (int j = 0; j < n; ++j) {
        // Chords that straddle a kink mix the two one-sided slopes; the
        // smaller magnitude is the faithful weak-derivative bound there.
        const double fwd = (u.values[(j + 1) % n] - u.values[j]) / h;
        const double bwd = (u.values[j] - u.values[(j + n - 1) % n]) / h;
        const double ux = std::min(std::abs(fwd), std::abs(bwd));
        su.values[j] = u.values[j] - ux;
        sv.values[j] = 2.0 * v.values[j] - std::abs(vx.values[j]);
        s6.values[j] = 6.0 * v.values[j] - u.values[j];
    }
    return CertificateReport{min_margin(su), min_margin(sv), min_margin(s6)};
}

PerturbationRecipe random_recipe(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> offset(0.3, 2.5);
    std::uniform_real_distribution<double> width(0.3, 1.0);
    PerturbationRecipe r;
    r.kind = static_cast<PerturbationRecipe::Kind>(kind(rng));
    r.offset = offset(rng);
    r.width = width(rng);
    return r;
}

namespace {

/// y0 for perturbation amplitude a under the given recipe.
MeasureData recipe_measure(const UniformGrid& g, double c, double a,
                           const PerturbationRecipe& recipe) {
    MeasureData y{{{0.0, 2.0 * c}}, GridFunction::zero(g)};
    switch (recipe.kind) {
        case PerturbationRecipe::Kind::extra_atom:
            y.atoms.push_back({recipe.offset, a});
            break;
        case PerturbationRecipe::Kind::density_bump: {
            const double x0 = recipe.offset;
            const double w = recipe.width;
            for (int j = 0; j < g.n_points; ++j) {
                const double d = g.wrap(g.x(j) - x0);
                y.density.values[j] = a * std::exp(-d * d / (w * w));
            }
            break;
        }
        case PerturbationRecipe::Kind::mass_rescale:
            y.atoms[0].mass = (1.0 + a) * 2.0 * c;
            break;
    }
    return y;
}

} // namespace

PerturbedPeakon make_perturbed_peakon(const UniformGrid& g, double c, double eps,
                                      const PerturbationRecipe& recipe) {
    if (!(c > 0.0)) throw std::invalid_argument("make_perturbed_peakon: c must be > 0");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("make_perturbed_peakon: eps must be in (0, 1)");

    const double target = eps * eps;
    GridFunction phic = sample_peakon(g, c, 0.0);
    auto distance_at = [&](double a) {
        return h_norm_distance(synthesize_u(recipe_measure(g, c, a, recipe)), phic);
    };

    // Grow the amplitude until the target is bracketed, then bisect to 1%.
    double lo = 0.0, hi = 1e-4 * c;
    int guard = 0;
    while (distance_at(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 80)
            throw std::runtime_error("make_perturbed_peakon: recipe cannot reach target distance");
    }
    double a = hi, d = distance_at(hi);
    for (int it = 0; it < 200 && std::abs(d - target) > 0.01 * target; ++it) {
        a = 0.5 * (lo + hi);
        d = distance_at(a);
        (d < target ? lo : hi) = a;
    }
    MeasureData y0 = recipe_measure(g, c, a, recipe);
    return PerturbedPeakon{synthesize_u(y0), std::move(y0), d};
}

} // namespace dp
