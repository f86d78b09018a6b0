#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dp {

/// Uniform periodic grid on [-L, L) with N a power of two.
/// Nodes are x_j = -L + j*h, h = 2L/N.
struct UniformGrid {
    double half_width = 30.0;
    int n_points = 8192;

    static UniformGrid make(double half_width, int n_points);

    double spacing() const { return 2.0 * half_width / n_points; }
    double period() const { return 2.0 * half_width; }
    double x(int j) const { return -half_width + j * spacing(); }
    /// Fundamental wavenumber of mode k: kappa_k = k*pi/L.
    double wavenumber(int k) const { return k * M_PI / half_width; }
    /// Signed distance x-z wrapped into [-L, L).
    double wrap(double d) const;

    bool operator==(const UniformGrid&) const = default;
};

/// Samples of a real function on a UniformGrid.
struct GridFunction {
    UniformGrid grid;
    std::vector<double> values;

    static GridFunction zero(const UniformGrid& g);
    static GridFunction sample(const UniformGrid& g, const std::function<double(double)>& f);

    int size() const { return grid.n_points; }
    /// Throws if the value array has the wrong length or non-finite entries.
    void validate() const;
};

// Pointwise arithmetic; operands must live on the same grid.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& f);
GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b);

/// Periodic rectangle rule h * sum(values); equals the trapezoid rule on
/// periodic data and is spectrally accurate for smooth integrands.
double integrate(const GridFunction& f);

/// Fourier-multiplier derivative (i*kappa)^order, order in {1, 2}.
/// The Nyquist mode of the first derivative is zeroed.
GridFunction spectral_derivative(const GridFunction& f, int order);

/// Applies a real multiplier m(kappa_k) to the spectrum of f.
GridFunction apply_real_multiplier(const GridFunction& f, const std::function<double(double)>& m);
/// Applies an odd imaginary multiplier i*m(kappa_k); the Nyquist mode is zeroed.
GridFunction apply_imag_multiplier(const GridFunction& f, const std::function<double(double)>& m);

/// Value at x in [-L, L) by cubic interpolation through the four nearest nodes.
double eval_at(const GridFunction& f, double x);

struct Norms {
    double l2 = 0.0;
    double linf = 0.0;
};
Norms norms(const GridFunction& f);

double max_value(const GridFunction& f);
double min_value(const GridFunction& f);

} // namespace dp
