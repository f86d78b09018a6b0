#include "dp/admissible.hpp"
#include "dp/dynamics.hpp"
#include "dp/fft.hpp"
#include "dp/functionals.hpp"
#include "dp/grid.hpp"
#include "dp/helmholtz.hpp"
#include "dp/stability.hpp"
#include "dp/waves.hpp"

#include <benchmark/benchmark.h>

using namespace dp;

namespace {

UniformGrid grid_of(const benchmark::State& state) {
    return UniformGrid::make(30.0, static_cast<int>(state.range(0)));
}

void BM_fft_forward(benchmark::State& state) {
    auto u = sample_peakon(grid_of(state), 1.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(fft::forward(u.values));
}
BENCHMARK(BM_fft_forward)->Arg(2048)->Arg(8192)->Arg(32768);

void BM_inv_helmholtz(benchmark::State& state) {
    auto u = sample_peakon(grid_of(state), 1.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(inv_helmholtz(HelmholtzKind::four, u));
}
BENCHMARK(BM_inv_helmholtz)->Arg(2048)->Arg(8192)->Arg(32768);

void BM_energy_E(benchmark::State& state) {
    auto u = sample_peakon(grid_of(state), 1.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(energy_E(u));
}
BENCHMARK(BM_energy_E)->Arg(2048)->Arg(8192);

void BM_dp_rhs(benchmark::State& state) {
    auto g = grid_of(state);
    MeasureData y{{{0.0, 2.0}}, GridFunction::zero(g)};
    auto u = synthesize_u(y);
    for (auto _ : state) benchmark::DoNotOptimize(dp_rhs(u));
}
BENCHMARK(BM_dp_rhs)->Arg(2048)->Arg(8192);

void BM_step_rk4(benchmark::State& state) {
    auto g = grid_of(state);
    MeasureData y{{{0.0, 2.0}}, GridFunction::zero(g)};
    auto u = synthesize_u(y);
    const double dt = 0.3 * g.spacing() / norms(u).linf;
    for (auto _ : state) benchmark::DoNotOptimize(step_rk4(u, dt, 36.0));
}
BENCHMARK(BM_step_rk4)->Arg(2048)->Arg(8192);

void BM_stability_certificate(benchmark::State& state) {
    auto u = sample_peakon(grid_of(state), 1.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(stability_certificate(u, 1.0));
}
BENCHMARK(BM_stability_certificate)->Arg(2048)->Arg(8192);

} // namespace

BENCHMARK_MAIN();
