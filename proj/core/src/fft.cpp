#include "dp/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dp::fft {
namespace {

// FFTW's planner is not thread-safe; plan creation/destruction is serialized.
// Plans and their buffers are cached per thread, so execution needs no lock.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit PlanPair(int n) {
        rbuf = fftw_alloc_real(n);
        cbuf = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(n, rbuf, cbuf, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, cbuf, rbuf, FFTW_ESTIMATE);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
    ~PlanPair() {
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(bwd);
        }
        fftw_free(cbuf);
        fftw_free(rbuf);
    }
};

PlanPair& plans_for(int n) {
    thread_local std::map<int, std::unique_ptr<PlanPair>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    }
    return *it->second;
}

} // namespace

std::vector<std::complex<double>> forward(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("fft::forward: need at least 2 samples");
    PlanPair& p = plans_for(n);
    std::memcpy(p.rbuf, x.data(), sizeof(double) * n);
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> out(n / 2 + 1);
    std::memcpy(reinterpret_cast<double*>(out.data()), p.cbuf,
                sizeof(fftw_complex) * out.size());
    return out;
}

std::vector<double> inverse(std::span<const std::complex<double>> spectrum, int n) {
    if (static_cast<int>(spectrum.size()) != n / 2 + 1)
        throw std::invalid_argument("fft::inverse: spectrum size must be n/2+1");
    PlanPair& p = plans_for(n);
    std::memcpy(p.cbuf, reinterpret_cast<const double*>(spectrum.data()),
                sizeof(fftw_complex) * spectrum.size());
    fftw_execute(p.bwd);
    std::vector<double> out(n);
    const double scale = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = p.rbuf[i] * scale;
    return out;
}

} // namespace dp::fft
