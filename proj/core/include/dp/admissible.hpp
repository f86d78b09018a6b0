#pragma once

#include "dp/grid.hpp"

#include <optional>
#include <random>
#include <vector>

namespace dp {

/// One nonnegative point mass of the momentum measure.
struct Atom {
    double pos = 0.0;
    double mass = 0.0;
};

/// Momentum y = (1 - dxx) u as nonnegative atoms plus a nonnegative density.
/// Continuous singular parts are not representable.
struct MeasureData {
    std::vector<Atom> atoms;
    GridFunction density;

    double total_mass() const;
};

/// u = G1 * y, with atoms summed in closed form (periodized kernel) and the
/// density part solved spectrally. The output is nonnegative by construction.
/// Throws on negative masses, negative density values, or zero total mass.
GridFunction synthesize_u(const MeasureData& y);

struct ConeMargin {
    double margin = 0.0;   // min over the grid of the inequality slack
    double location = 0.0; // argmin node
};

/// Slack of the three cone inequalities: u - |u_x|, 2v - |v_x| and 6v - u,
/// with u_x one-sided finite differences (respects the kink) and v, v_x via
/// the Helmholtz operators. Negative margins are reported, never thrown.
struct CertificateReport {
    ConeMargin u_slope;  // u - |u_x| >= 0
    ConeMargin v_slope;  // 2v - |v_x| >= 0
    ConeMargin u_vs_6v;  // 6v - u >= 0
};
CertificateReport cone_check(const GridFunction& u);

struct PerturbationRecipe {
    enum class Kind { extra_atom, density_bump, mass_rescale };
    Kind kind = Kind::extra_atom;
    double offset = 1.0; // atom position / bump center relative to the peak
    double width = 0.5;  // bump width (density_bump only)
};

/// Draws a random recipe with offsets in [0.3, 2.5] and widths in [0.3, 1.0].
PerturbationRecipe random_recipe(std::mt19937_64& rng);

struct PerturbedPeakon {
    GridFunction u0;
    MeasureData y0;
    double achieved_distance = 0.0;
};

/// Builds y0 = 2c*delta_0 plus the recipe perturbation, bisecting the
/// perturbation amplitude until the H-distance to the peakon equals eps^2
/// within 1% relative. y0 >= 0 by construction.
PerturbedPeakon make_perturbed_peakon(const UniformGrid& g, double c, double eps,
                                      const PerturbationRecipe& recipe);

} // namespace dp
