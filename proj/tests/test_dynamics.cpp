#include <doctest.h>

#include "dp/dynamics.hpp"
#include "dp/fft.hpp"
#include "dp/functionals.hpp"
#include "dp/grid.hpp"
#include "dp/helmholtz.hpp"
#include "dp/waves.hpp"

#include <cmath>

using namespace dp;

namespace {

GridFunction mollified_peakon(const UniformGrid& g, double c) {
    const double h = g.spacing(), w = 4.0 * h;
    GridFunction dens = GridFunction::zero(g);
    double dm = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double d = g.wrap(g.x(j));
        dens.values[j] = std::exp(-d * d / (w * w));
        dm += dens.values[j];
    }
    dm *= h;
    for (auto& v : dens.values) v *= 2.0 * c / dm;
    return inv_helmholtz(HelmholtzKind::one, dens);
}

GridFunction translate(const GridFunction& f, double shift) {
    auto spec = fft::forward(f.values);
    for (int k = 0; k < static_cast<int>(spec.size()); ++k) {
        const double kap = f.grid.wavenumber(k);
        spec[k] *= std::exp(std::complex<double>(0.0, -kap * shift));
    }
    return GridFunction{f.grid, fft::inverse(spec, f.grid.n_points)};
}

} // namespace

TEST_CASE("config validation") {
    EvolutionConfig c;
    c.t_end = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.cfl = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.filter_strength = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.monitor_stride = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("trivial right sides vanish") {
    auto g = UniformGrid::make(30.0, 256);
    CHECK(norms(dp_rhs(GridFunction::zero(g))).linf == 0.0);
    auto k = GridFunction::sample(g, [](double) { return 1.7; });
    CHECK(norms(dp_rhs(k)).linf <= 1e-13);
}

TEST_CASE("the mollified peakon nearly satisfies the traveling-wave relation") {
    auto g = UniformGrid::make(30.0, 8192);
    auto u = mollified_peakon(g, 1.0);
    auto r = dp_rhs(u);
    auto cux = -1.0 * spectral_derivative(u, 1);
    CHECK(norms(r - cux).linf <= 1e-2); // mollification-scale error
}

TEST_CASE("step rejects too-large dt and names the bound") {
    auto g = UniformGrid::make(30.0, 2048);
    auto u = mollified_peakon(g, 1.0);
    CHECK_THROWS_WITH_AS(step_rk4(u, 1.0, 36.0), doctest::Contains("admissible"),
                         std::invalid_argument);
    CHECK_THROWS_AS(step_rk4(u, -1e-3, 36.0), std::invalid_argument);
}

TEST_CASE("one step tracks the translated profile") {
    auto g = UniformGrid::make(30.0, 8192);
    auto u = mollified_peakon(g, 1.0);
    const double dt = 1e-3;
    auto stepped = step_rk4(u, dt, 36.0);
    auto shifted = translate(u, dt);
    CHECK(norms(stepped - shifted).linf <= 1e-4);
}

TEST_CASE("one-step error scales at fifth order") {
    auto g = UniformGrid::make(30.0, 8192);
    auto u = mollified_peakon(g, 1.0);
    const double dt = 4e-3;
    auto err_at = [&](double step) {
        auto ref = u;
        for (int s = 0; s < 16; ++s) ref = step_rk4(ref, step / 16.0, 0.0);
        return norms(step_rk4(u, step, 0.0) - ref).linf;
    };
    const double ratio = err_at(dt) / err_at(dt / 2.0);
    CHECK(ratio >= 20.0);
    CHECK(ratio <= 48.0);
}

TEST_CASE("evolve rejects empty or negative data") {
    auto g = UniformGrid::make(30.0, 2048);
    EvolutionConfig cfg;
    cfg.t_end = 0.1;
    MeasureData empty{{}, GridFunction::zero(g)};
    CHECK_THROWS_AS(evolve(empty, 1.0, cfg), std::invalid_argument);
    MeasureData neg{{{0.0, -1.0}}, GridFunction::zero(g)};
    CHECK_THROWS_AS(evolve(neg, 1.0, cfg), std::invalid_argument);
    MeasureData ok{{{0.0, 2.0}}, GridFunction::zero(g)};
    CHECK_THROWS_AS(evolve(ok, -1.0, cfg), std::invalid_argument);
}

TEST_CASE("short evolution keeps its invariants") {
    auto g = UniformGrid::make(30.0, 2048);
    MeasureData y0{{{0.0, 2.0}}, GridFunction::zero(g)};
    EvolutionConfig cfg;
    cfg.t_end = 0.5;
    cfg.monitor_stride = 10;
    auto tr = evolve(y0, 1.0, cfg);
    CHECK_FALSE(tr.aborted);
    REQUIRE(tr.times.size() >= 3);
    CHECK(tr.E_series.size() == tr.times.size());
    CHECK(tr.min_y_series.size() == tr.times.size());
    for (size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
    CHECK(tr.times.back() == doctest::Approx(0.5));
    for (size_t i = 0; i < tr.times.size(); ++i) {
        CHECK(std::abs(tr.E_series[i] / tr.E_series[0] - 1.0) <= 1e-6);
        CHECK(std::abs(tr.F_series[i] / tr.F_series[0] - 1.0) <= 1e-6);
        CHECK(tr.min_y_series[i] >= -1e-4);
    }
    CHECK(tr.xi_series.back() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("the traveling-wave error improves under refinement") {
    // The error floor is the w = 4h mollification itself, which refines at
    // order 3/2 (factor 2.83 per doubling), not the order-2 a sharper scheme
    // would show.
    double err[2];
    int i = 0;
    for (int n : {2048, 4096}) {
        auto g = UniformGrid::make(30.0, n);
        MeasureData y0{{{0.0, 2.0}}, GridFunction::zero(g)};
        EvolutionConfig cfg;
        cfg.t_end = 1.0;
        cfg.monitor_stride = 1 << 20;
        auto tr = evolve(y0, 1.0, cfg);
        err[i++] = tr.h_distance_series.back();
    }
    CHECK(err[0] / err[1] >= 2.5);
}
