#include "dp/waves.hpp"

namespace dp {

double peakon(double c, double z, double x) { return c * std::exp(-std::abs(x - z)); }

double smooth_peakon(double c, double z, double x, int order) {
    const double d = x - z;
    const double a = std::abs(d);
    const double e1 = std::exp(-a);
    const double e2 = std::exp(-2.0 * a);
    switch (order) {
        case 0:
            return c * (e1 / 3.0 - e2 / 6.0);
        case 1: {
            if (d == 0.0) return 0.0; // odd function
            const double sgn = d > 0.0 ? 1.0 : -1.0;
            return sgn * c * (-e1 / 3.0 + e2 / 3.0);
        }
        case 2:
            return c * (e1 / 3.0 - 2.0 * e2 / 3.0);
        default:
            throw std::invalid_argument("smooth_peakon: order must be 0, 1 or 2");
    }
}

GridFunction sample_peakon(const UniformGrid& g, double c, double z) {
    const double L = g.half_width;
    const double sinhL = std::sinh(L);
    return GridFunction::sample(g, [&](double x) {
        const double d = std::abs(g.wrap(x - z));
        return c * std::cosh(L - d) / sinhL;
    });
}

GridFunction sample_smooth_peakon(const UniformGrid& g, double c, double z, int order) {
    // Periodization of the e^{-2|x|} part uses the period-2L image sum with
    // decay rate 2; both terms stay in closed form.
    const double L = g.half_width;
    const double sinhL = std::sinh(L);
    const double sinh2L = std::sinh(2.0 * L);
    if (order == 0) {
        return GridFunction::sample(g, [&](double x) {
            const double d = std::abs(g.wrap(x - z));
            return c * (std::cosh(L - d) / (3.0 * sinhL) -
                        std::cosh(2.0 * (L - d)) / (6.0 * sinh2L));
        });
    }
    if (order == 1) {
        return GridFunction::sample(g, [&](double x) {
            const double w = g.wrap(x - z);
            if (w == 0.0) return 0.0;
            const double d = std::abs(w);
            const double sgn = w > 0.0 ? 1.0 : -1.0;
            return sgn * c * (-std::sinh(L - d) / (3.0 * sinhL) +
                              std::sinh(2.0 * (L - d)) / (3.0 * sinh2L));
        });
    }
    if (order == 2) {
        return GridFunction::sample(g, [&](double x) {
            const double d = std::abs(g.wrap(x - z));
            return c * (std::cosh(L - d) / (3.0 * sinhL) -
                        2.0 * std::cosh(2.0 * (L - d)) / (3.0 * sinh2L));
        });
    }
    throw std::invalid_argument("sample_smooth_peakon: order must be 0, 1 or 2");
}

std::vector<Landmark> landmark_constants(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("landmark_constants: c must be > 0");
    const double theta = kThetaHalfWidth;
    const double exact_theta = std::log(20.0 / (20.0 - std::sqrt(399.0)));
    const double vzone = kConcavityHalfWidth;
    // Maximum of the second derivative over the concavity window sits at the
    // window edges; its closed form is (sqrt(2)-2)c/6.
    const double rho2_bound = (std::sqrt(2.0) - 2.0) / 6.0 * c;
    return {
        {"theta_edge", theta, theta},
        {"exact_theta", exact_theta, exact_theta},
        {"rho_at_edge", theta, smooth_peakon(c, 0.0, theta, 0)},
        {"rho1_at_edge", theta, smooth_peakon(c, 0.0, theta, 1)},
        {"rho2_at_edge", theta, smooth_peakon(c, 0.0, theta, 2)},
        {"v_zone_edge", vzone, vzone},
        {"rho2_bound_on_V", vzone, rho2_bound},
    };
}

} // namespace dp
