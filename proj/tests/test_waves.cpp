#include <doctest.h>

#include "dp/grid.hpp"
#include "dp/waves.hpp"

#include <cmath>
#include <random>

using namespace dp;

TEST_CASE("profile landmark values in closed form") {
    const double c = 1.7;
    CHECK(smooth_peakon(c, 0.0, 0.0, 0) == doctest::Approx(c / 6.0).epsilon(1e-14));
    CHECK(smooth_peakon(c, 0.0, std::log(2.0), 1) == doctest::Approx(-c / 12.0).epsilon(1e-14));
    CHECK(smooth_peakon(c, 0.0, 0.0, 2) == doctest::Approx(-c / 3.0).epsilon(1e-14));
    CHECK(smooth_peakon(c, 0.0, std::log(4.0), 2) == doctest::Approx(c / 24.0).epsilon(1e-14));
    CHECK(smooth_peakon(c, 0.0, -std::log(4.0), 2) == doctest::Approx(c / 24.0).epsilon(1e-14));
    CHECK(std::abs(smooth_peakon(c, 0.0, std::log(2.0), 2)) <= 1e-14 * c);
    CHECK(std::abs(smooth_peakon(c, 0.0, -std::log(2.0), 2)) <= 1e-14 * c);
    CHECK(smooth_peakon(c, 0.0, -0.5 * std::log(2.0), 1) ==
          doctest::Approx((std::sqrt(2.0) - 1.0) * c / 6.0).epsilon(1e-14));
}

TEST_CASE("symmetries") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.0, 10.0);
    for (int t = 0; t < 200; ++t) {
        const double x = d(rng);
        CHECK(smooth_peakon(1.0, 0.0, x, 0) ==
              doctest::Approx(smooth_peakon(1.0, 0.0, -x, 0)).epsilon(1e-14));
        CHECK(smooth_peakon(1.0, 0.0, x, 1) ==
              doctest::Approx(-smooth_peakon(1.0, 0.0, -x, 1)).epsilon(1e-14));
        CHECK(smooth_peakon(1.0, 0.0, x, 2) ==
              doctest::Approx(smooth_peakon(1.0, 0.0, -x, 2)).epsilon(1e-14));
        if (x > 1e-6)
            CHECK(std::abs(peakon(1.0, 0.0, x) - peakon(1.0, 0.0, -x)) <= 1e-14);
    }
}

TEST_CASE("peakon slope magnitude equals its value away from the peak") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-12.0, 12.0);
    const double c = 2.3, dx = 1e-7;
    for (int t = 0; t < 1000; ++t) {
        const double x = d(rng);
        if (std::abs(x) < 1e-3) continue;
        const double slope = (peakon(c, 0.0, x + dx) - peakon(c, 0.0, x - dx)) / (2.0 * dx);
        CHECK(std::abs(std::abs(slope) - peakon(c, 0.0, x)) <= 1e-6 * c);
    }
}

TEST_CASE("smooth peakon slope is dominated by twice the value") {
    const double c = 1.0;
    for (int i = 0; i <= 10000; ++i) {
        const double x = -15.0 + 30.0 * i / 10000.0;
        CHECK(std::abs(smooth_peakon(c, 0.0, x, 1)) <=
              2.0 * smooth_peakon(c, 0.0, x, 0) + 1e-14);
    }
}

TEST_CASE("peak equality 6 rho = phi and the left-window slope floor") {
    const double c = 3.1;
    CHECK(6.0 * smooth_peakon(c, 0.0, 0.0, 0) == doctest::Approx(peakon(c, 0.0, 0.0)));
    for (int i = 0; i <= 10000; ++i) {
        const double x =
            -6.7 + ((-0.5 * std::log(2.0)) - (-6.7)) * static_cast<double>(i) / 10000.0;
        CHECK(smooth_peakon(1.0, 0.0, x, 1) >= 1e-4);
    }
}

TEST_CASE("bad arguments throw") {
    CHECK_THROWS_AS(smooth_peakon(1.0, 0.0, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(landmark_constants(0.0), std::invalid_argument);
    auto g = UniformGrid::make(30.0, 64);
    CHECK_THROWS_AS(sample_smooth_peakon(g, 1.0, 0.0, -1), std::invalid_argument);
}

TEST_CASE("sampled peakon periodization") {
    auto g = UniformGrid::make(30.0, 2048);
    auto f = sample_peakon(g, 1.0, 0.0);
    CHECK(f.values[g.n_points / 2] == doctest::Approx(std::cosh(30.0) / std::sinh(30.0)));
    double err = 0.0;
    for (int j = 0; j < g.n_points; ++j)
        err = std::max(err, std::abs(f.values[j] - peakon(1.0, 0.0, g.x(j))));
    CHECK(err <= 1e-12); // e^{-2L} wraparound only
}

TEST_CASE("landmark table") {
    const double c = 2.0;
    auto table = landmark_constants(c);
    auto find = [&](const std::string& name) {
        for (const auto& l : table)
            if (l.name == name) return l;
        FAIL("missing landmark ", name);
        return Landmark{};
    };
    CHECK(find("theta_edge").location == 6.7);
    const double exact = std::log(20.0 / (20.0 - std::sqrt(399.0)));
    CHECK(find("exact_theta").value == doctest::Approx(exact).epsilon(1e-14));
    CHECK(std::abs(6.7 - exact) <= 0.0161);
    const double rho_edge = find("rho_at_edge").value;
    CHECK(rho_edge >= 0.9 * c / 2400.0);
    CHECK(rho_edge <= 1.1 * c / 2400.0);
    CHECK(find("rho2_bound_on_V").value ==
          doctest::Approx((std::sqrt(2.0) - 2.0) * c / 6.0).epsilon(1e-14));
    // the concavity bound actually holds on the window
    for (int i = 0; i <= 2000; ++i) {
        const double x = -kConcavityHalfWidth + 2.0 * kConcavityHalfWidth * i / 2000.0;
        CHECK(smooth_peakon(c, 0.0, x, 2) <= (std::sqrt(2.0) - 2.0) * c / 6.0 + 1e-12);
    }
}
