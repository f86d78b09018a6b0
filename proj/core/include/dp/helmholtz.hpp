#pragma once

#include "dp/grid.hpp"

namespace dp {

/// The shift a in the inverse Helmholtz operator (a - dxx)^{-1}.
/// a = 1 pairs with the Green kernel e^{-|x|}/2, a = 4 with e^{-2|x|}/4.
enum class HelmholtzKind : int { one = 1, four = 4 };

inline double helmholtz_shift(HelmholtzKind k) { return static_cast<double>(static_cast<int>(k)); }

/// Periodic spectral solve of (a - dxx) w = f, multiplier 1/(a + kappa^2).
GridFunction inv_helmholtz(HelmholtzKind kind, const GridFunction& f);

/// (a - dxx)^{-1} dx f in one pass; the composed multiplier i*kappa/(a + kappa^2)
/// is bounded, so kinked inputs are not amplified.
GridFunction inv_helmholtz_dx(HelmholtzKind kind, const GridFunction& f);

/// Max-norm of (1-dxx)^{-1}(4-dxx)^{-1} f - (1/3)(1-dxx)^{-1} f + (1/3)(4-dxx)^{-1} f.
/// The identity is exact per Fourier mode, so the residual is rounding only.
double resolvent_identity_residual(const GridFunction& f);

/// v = (4-dxx)^{-1} u with its first two derivatives. v_x uses the bounded
/// multiplier route, v_xx the algebraic relation v_xx = 4v - u; both avoid
/// differentiating a kinked u.
struct HelmholtzProfile {
    GridFunction v;
    GridFunction vx;
    GridFunction vxx;
};
HelmholtzProfile helmholtz_profile(const GridFunction& u);

} // namespace dp
