#include <doctest.h>

#include "dp/grid.hpp"
#include "dp/helmholtz.hpp"
#include "dp/waves.hpp"

#include <cmath>
#include <random>

using namespace dp;

namespace {

GridFunction random_band_limited(const UniformGrid& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    GridFunction f = GridFunction::zero(g);
    for (int m = 1; m <= 20; ++m) {
        const double a = d(rng), b = d(rng), k = g.wavenumber(m);
        for (int j = 0; j < g.n_points; ++j)
            f.values[j] += a * std::cos(k * g.x(j)) + b * std::sin(k * g.x(j));
    }
    return f;
}

} // namespace

TEST_CASE("constants invert to value over shift") {
    auto g = UniformGrid::make(30.0, 64);
    auto f = GridFunction::sample(g, [](double) { return 3.0; });
    CHECK(norms(inv_helmholtz(HelmholtzKind::one, f)).linf == doctest::Approx(3.0));
    CHECK(norms(inv_helmholtz(HelmholtzKind::four, f)).linf == doctest::Approx(0.75));
}

TEST_CASE("single modes pick up the exact multiplier") {
    auto g = UniformGrid::make(30.0, 256);
    const double k = g.wavenumber(5);
    auto f = GridFunction::sample(g, [&](double x) { return std::sin(k * x); });
    auto w = inv_helmholtz(HelmholtzKind::four, f);
    auto wx = inv_helmholtz_dx(HelmholtzKind::four, f);
    for (int j = 0; j < g.n_points; ++j) {
        CHECK(w.values[j] ==
              doctest::Approx(std::sin(k * g.x(j)) / (4.0 + k * k)).epsilon(1e-12));
        CHECK(wx.values[j] ==
              doctest::Approx(k * std::cos(k * g.x(j)) / (4.0 + k * k)).epsilon(1e-12));
    }
}

TEST_CASE("resolvent identity holds to rounding") {
    auto g = UniformGrid::make(30.0, 1024);
    for (unsigned s : {1u, 2u, 3u})
        CHECK(resolvent_identity_residual(random_band_limited(g, s)) <= 1e-12);
}

TEST_CASE("peakon maps to the smooth peakon") {
    double err[2];
    int i = 0;
    for (int n : {2048, 8192}) {
        auto g = UniformGrid::make(30.0, n);
        auto v = inv_helmholtz(HelmholtzKind::four, sample_peakon(g, 1.0, 0.0));
        err[i++] = norms(v - sample_smooth_peakon(g, 1.0, 0.0, 0)).linf;
    }
    CHECK(err[1] <= 5e-6);
    CHECK(err[0] / err[1] >= 8.0); // order 2 across two doublings
}

TEST_CASE("profile derivatives are mutually consistent") {
    auto g = UniformGrid::make(30.0, 512);
    auto u = random_band_limited(g, 7);
    auto p = helmholtz_profile(u);
    auto vx_spec = spectral_derivative(p.v, 1);
    for (int j = 0; j < g.n_points; ++j) {
        CHECK(p.vxx.values[j] ==
              doctest::Approx(4.0 * p.v.values[j] - u.values[j]).epsilon(1e-13));
        CHECK(p.vx.values[j] == doctest::Approx(vx_spec.values[j]).epsilon(1e-11));
    }
}
