#include "dp/helmholtz.hpp"

namespace dp {

GridFunction inv_helmholtz(HelmholtzKind kind, const GridFunction& f) {
    const double a = helmholtz_shift(kind);
    return apply_real_multiplier(f, [a](double k) { return 1.0 / (a + k * k); });
}

GridFunction inv_helmholtz_dx(HelmholtzKind kind, const GridFunction& f) {
    const double a = helmholtz_shift(kind);
    return apply_imag_multiplier(f, [a](double k) { return k / (a + k * k); });
}

double resolvent_identity_residual(const GridFunction& f) {
    GridFunction lhs = inv_helmholtz(HelmholtzKind::one, inv_helmholtz(HelmholtzKind::four, f));
    GridFunction rhs = (1.0 / 3.0) * (inv_helmholtz(HelmholtzKind::one, f) -
                                      inv_helmholtz(HelmholtzKind::four, f));
    return norms(lhs - rhs).linf;
}

HelmholtzProfile helmholtz_profile(const GridFunction& u) {
    HelmholtzProfile p{inv_helmholtz(HelmholtzKind::four, u),
                       inv_helmholtz_dx(HelmholtzKind::four, u),
                       GridFunction::zero(u.grid)};
    for (int j = 0; j < u.size(); ++j)
        p.vxx.values[j] = 4.0 * p.v.values[j] - u.values[j];
    return p;
}

} // namespace dp
