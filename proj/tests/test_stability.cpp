#include <doctest.h>

#include "dp/admissible.hpp"
#include "dp/functionals.hpp"
#include "dp/grid.hpp"
#include "dp/helmholtz.hpp"
#include "dp/stability.hpp"
#include "dp/waves.hpp"

#include <cmath>
#include <random>

using namespace dp;

namespace {
const UniformGrid g2k = UniformGrid::make(30.0, 2048);
}

TEST_CASE("interval validation") {
    CHECK_THROWS_AS(Interval::make(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval::make(2.0, 1.0), std::invalid_argument);
    CHECK(Interval::make(-1.0, 3.0).length() == doctest::Approx(4.0));
}

TEST_CASE("locate_max refines below the grid") {
    auto v = GridFunction::sample(g2k, [](double x) {
        double d = x - 0.3; // off-node center
        return std::exp(-d * d);
    });
    auto mp = locate_max(v);
    CHECK(std::abs(mp.xi - 0.3) <= 1e-4);
    CHECK(std::abs(mp.M - 1.0) <= 1e-6);
    CHECK(std::abs(mp.refinement) <= 0.5);
}

TEST_CASE("locate_max tie-break and degenerate input") {
    auto v = GridFunction::sample(g2k, [&](double x) { return std::cos(g2k.wavenumber(2) * x); });
    CHECK(locate_max(v).xi == doctest::Approx(-30.0)); // equal maxima at -30 and 0
    CHECK_THROWS_WITH_AS(locate_max(GridFunction::zero(g2k)), doctest::Contains("degenerate"),
                         std::invalid_argument);
}

TEST_CASE("maxima counting") {
    auto v = GridFunction::sample(g2k, [&](double x) { return std::cos(g2k.wavenumber(8) * x); });
    CHECK(count_local_maxima(v, Interval::make(-30.0, 30.0)) == 8);
    CHECK(count_local_maxima(v, Interval::make(-3.0, 3.0)) == 1);
    CHECK_THROWS_AS(count_local_maxima(v, Interval::make(-3.0, 31.0)), std::invalid_argument);

    auto single = inv_helmholtz(HelmholtzKind::four, sample_peakon(g2k, 1.0, 0.0));
    CHECK(count_local_maxima(single, Interval::make(-6.7, 6.7)) == 1);
}

TEST_CASE("quadratic identity holds for any xi") {
    auto u = sample_peakon(g2k, 1.0, 1.2);
    CHECK(quadratic_identity_residual(u, 1.0, 1.2) <= 1e-3);
    CHECK(quadratic_identity_residual(u, 1.0, -3.7) <= 1e-3);
    std::mt19937_64 rng(9);
    auto p = make_perturbed_peakon(g2k, 1.0, 0.04, random_recipe(rng));
    CHECK(quadratic_identity_residual(p.u0, 1.0, 0.25) <= 1e-3);
}

TEST_CASE("quadratic identity residual decays at order two") {
    double res[2];
    int i = 0;
    for (int n : {2048, 4096}) {
        auto g = UniformGrid::make(30.0, n);
        std::mt19937_64 rng(3);
        auto p = make_perturbed_peakon(g, 1.0, 0.04, random_recipe(rng));
        res[i++] = quadratic_identity_residual(p.u0, 1.0, 0.37);
    }
    CHECK(res[0] / res[1] >= 3.0);
}

TEST_CASE("constant profiles degenerate g and h") {
    auto v = GridFunction::sample(g2k, [](double) { return 0.7; });
    auto zero = GridFunction::zero(g2k);
    auto gf = build_g(v, zero, zero, 0.0);
    auto hf = build_h(v, zero, zero, 0.0);
    CHECK(norms(gf).linf == doctest::Approx(1.4));
    CHECK(min_value(gf) == doctest::Approx(1.4));
    CHECK(norms(hf).linf == doctest::Approx(0.7 * 16.0));
    CHECK(min_value(hf) == doctest::Approx(0.7 * 16.0));
}

TEST_CASE("identity residuals require a critical point") {
    auto u = sample_peakon(g2k, 1.0, 0.0);
    CHECK_THROWS_WITH_AS(identity_g_residual(u, 2.0), doctest::Contains("critical"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(identity_h_residual(u, 2.0), doctest::Contains("critical"),
                         std::invalid_argument);
}

TEST_CASE("cubic values") {
    const double c = 1.9;
    CHECK(std::abs(cubic_inequality_value(c * c / 3.0, 2.0 * c * c * c / 3.0, c / 6.0)) <=
          1e-12);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(-c / 3.0, c / 2.0);
    for (int t = 0; t < 100; ++t) {
        const double M = d(rng);
        CHECK(cubic_inequality_value(c * c / 3.0, 2.0 * c * c * c / 3.0, M) ==
              doctest::Approx(peakon_cubic_factored(M, c)).epsilon(1e-12));
    }
}

TEST_CASE("peakon margins, tails and sign pattern") {
    auto u = sample_peakon(g2k, 1.0, 0.0);
    CHECK(std::abs(h_bound_margin(u, 0.0, 1.0)) <= 1e-3);
    CHECK_THROWS_AS(h_bound_margin(u, 0.0, -1.0), std::invalid_argument);

    auto tails = tail_bounds(u, 0.0, 1.0);
    CHECK(tails.v_margin > 0.0);
    CHECK(tails.u_margin > 0.0);

    auto sp = vx_sign_pattern(u, 0.0);
    CHECK(sp.vx_min_left >= -1e-6);
    CHECK(sp.vx_max_right <= 1e-6);
    CHECK(sp.vxx_max_inner < 0.0);
}

TEST_CASE("certificate passes the peakon and reports the sign flip") {
    auto phi = sample_peakon(g2k, 1.0, 0.0);
    auto good = stability_certificate(phi, 1.0);
    CHECK(good.pass);
    CHECK(good.fail_reasons.empty());
    CHECK(good.local_max_count_on_theta == 1);
    CHECK(std::abs(good.E - 1.0 / 3.0) <= 1e-3);
    CHECK(std::abs(good.M - 1.0 / 6.0) <= 1e-3);
    CHECK(std::abs(good.xi) <= 1e-3);

    auto bad = stability_certificate(-1.0 * phi, 1.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.fail_reasons.size() >= 1);

    CHECK_THROWS_AS(stability_certificate(phi, 0.0), std::invalid_argument);
}

TEST_CASE("certificate passes a seeded perturbed ensemble") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> eps_draw(0.01, 0.05);
    for (int t = 0; t < 10; ++t) {
        auto p = make_perturbed_peakon(g2k, 1.0, eps_draw(rng), random_recipe(rng));
        auto rep = stability_certificate(p.u0, 1.0);
        CAPTURE(t);
        CHECK(rep.pass);
    }
}
