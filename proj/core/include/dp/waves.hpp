#pragma once

#include "dp/grid.hpp"

#include <string>
#include <vector>

namespace dp {

/// Peaked traveling wave c*e^{-|x-z|}; speed equals amplitude.
double peakon(double c, double z, double x);

/// Smoothed profile (c/3)e^{-|x-z|} - (c/6)e^{-2|x-z|} and its first two
/// derivatives (order 0, 1, 2). The first derivative is 0 at the center by
/// oddness; the second derivative is continuous across it.
double smooth_peakon(double c, double z, double x, int order);

/// Samples of the peakon periodized over the grid: the image sum collapses
/// to c*cosh(L-|d|)/sinh(L) with d the wrapped distance to the center.
GridFunction sample_peakon(const UniformGrid& g, double c, double z);
GridFunction sample_smooth_peakon(const UniformGrid& g, double c, double z, int order = 0);

struct Landmark {
    std::string name;
    double location;
    double value;
};

/// Closed-form constants of the profile geometry used by the stability
/// window arguments: the 6.7 concentration edge and its exact value
/// ln(20/(20-sqrt(399))), the profile and derivative sizes at that edge,
/// and the concavity-window bound.
std::vector<Landmark> landmark_constants(double c);

/// Half-width of the concentration window around a profile center.
inline constexpr double kThetaHalfWidth = 6.7;
/// Half-width ln(sqrt(2)) of the window where the profile is strictly concave.
inline const double kConcavityHalfWidth = 0.5 * std::log(2.0);

} // namespace dp
