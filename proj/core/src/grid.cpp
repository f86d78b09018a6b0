#include "dp/grid.hpp"

#include "dp/fft.hpp"

#include <algorithm>

namespace dp {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("grid mismatch between operands");
}

} // namespace

UniformGrid UniformGrid::make(double half_width, int n_points) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("UniformGrid: half_width must be > 0");
    if (n_points < 16 || !is_power_of_two(n_points))
        throw std::invalid_argument("UniformGrid: n_points must be a power of two >= 16");
    return UniformGrid{half_width, n_points};
}

double UniformGrid::wrap(double d) const {
    const double p = period();
    d = std::fmod(d + half_width, p);
    if (d < 0.0) d += p;
    return d - half_width;
}

GridFunction GridFunction::zero(const UniformGrid& g) {
    return GridFunction{g, std::vector<double>(g.n_points, 0.0)};
}

GridFunction GridFunction::sample(const UniformGrid& g, const std::function<double(double)>& f) {
    GridFunction out{g, std::vector<double>(g.n_points)};
    for (int j = 0; j < g.n_points; ++j) out.values[j] = f(g.x(j));
    out.validate();
    return out;
}

void GridFunction::validate() const {
    if (static_cast<int>(values.size()) != grid.n_points)
        throw std::invalid_argument("GridFunction: value count does not match grid");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (int j = 0; j < out.size(); ++j) out.values[j] += b.values[j];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (int j = 0; j < out.size(); ++j) out.values[j] -= b.values[j];
    return out;
}

GridFunction operator*(double s, const GridFunction& f) {
    GridFunction out = f;
    for (double& v : out.values) v *= s;
    return out;
}

GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (int j = 0; j < out.size(); ++j) out.values[j] *= b.values[j];
    return out;
}

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.spacing();
}

GridFunction apply_real_multiplier(const GridFunction& f, const std::function<double(double)>& m) {
    auto spec = fft::forward(f.values);
    for (int k = 0; k < static_cast<int>(spec.size()); ++k)
        spec[k] *= m(f.grid.wavenumber(k));
    return GridFunction{f.grid, fft::inverse(spec, f.grid.n_points)};
}

GridFunction apply_imag_multiplier(const GridFunction& f, const std::function<double(double)>& m) {
    auto spec = fft::forward(f.values);
    for (int k = 0; k < static_cast<int>(spec.size()); ++k)
        spec[k] *= std::complex<double>(0.0, m(f.grid.wavenumber(k)));
    spec.back() = 0.0; // Nyquist mode has no well-defined sign for odd multipliers
    return GridFunction{f.grid, fft::inverse(spec, f.grid.n_points)};
}

GridFunction spectral_derivative(const GridFunction& f, int order) {
    if (order == 1) return apply_imag_multiplier(f, [](double k) { return k; });
    if (order == 2) return apply_real_multiplier(f, [](double k) { return -k * k; });
    throw std::invalid_argument("spectral_derivative: order must be 1 or 2");
}

double eval_at(const GridFunction& f, double x) {
    const UniformGrid& g = f.grid;
    if (x < -g.half_width || x >= g.half_width)
        throw std::domain_error("eval_at: x outside [-L, L)");
    const double h = g.spacing();
    const double t = (x + g.half_width) / h;
    const int j = static_cast<int>(std::floor(t));
    const double s = t - j; // in [0, 1)
    const int n = g.n_points;
    auto at = [&](int i) { return f.values[((i % n) + n) % n]; };
    // Cubic Lagrange through nodes j-1 .. j+2.
    const double ym1 = at(j - 1), y0 = at(j), y1 = at(j + 1), y2 = at(j + 2);
    const double c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return c0 * ym1 + c1 * y0 + c2 * y1 + c3 * y2;
}

Norms norms(const GridFunction& f) {
    double linf = 0.0;
    double sq = 0.0;
    for (double v : f.values) {
        linf = std::max(linf, std::abs(v));
        sq += v * v;
    }
    return Norms{std::sqrt(sq * f.grid.spacing()), linf};
}

double max_value(const GridFunction& f) {
    return *std::max_element(f.values.begin(), f.values.end());
}

double min_value(const GridFunction& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

} // namespace dp
