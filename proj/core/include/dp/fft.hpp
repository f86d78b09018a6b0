#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dp::fft {

/// Real-to-complex DFT of n samples; returns the n/2+1 nonnegative-frequency
/// coefficients, unnormalized (forward then inverse scales by n).
std::vector<std::complex<double>> forward(std::span<const double> x);

/// Inverse of forward(): complex-to-real transform normalized by 1/n.
std::vector<double> inverse(std::span<const std::complex<double>> spectrum, int n);

} // namespace dp::fft
