#include <benchmark/benchmark.h>

#include "oufpt/kernel.hpp"
#include "oufpt/laplace_verify.hpp"
#include "oufpt/mc_oracle.hpp"
#include "oufpt/solver.hpp"
#include "oufpt/special_functions.hpp"

namespace {

using namespace oufpt;

const OUParams kParams{1.0, 1.0, 2.0};

KernelSpec mean_level(double q) {
    KernelSpec s;
    s.q = q;
    s.threshold = ConstantThreshold{1.0};
    s.params = kParams;
    s.x0 = 0.0;
    return s;
}

void BM_PcfHermite(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcf(3.0, z));
        z = z < 8.0 ? z + 0.01 : -8.0;
    }
}
BENCHMARK(BM_PcfHermite);

void BM_PcfFractional(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcf(-0.37, z));
        z = z < 8.0 ? z + 0.01 : -8.0;
    }
}
BENCHMARK(BM_PcfFractional);

void BM_PcfNegativeOrder(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcf(-2.6, z));
        z = z < 8.0 ? z + 0.01 : -8.0;
    }
}
BENCHMARK(BM_PcfNegativeOrder);

void BM_Kernel(benchmark::State& state) {
    const KernelSpec s = mean_level(0.5);
    double delta = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_K_lag(s, 2.0, delta));
        delta = delta < 1.9 ? delta * 1.01 : 1e-3;
    }
}
BENCHMARK(BM_Kernel);

void BM_Solve(benchmark::State& state, Scheme scheme, double q) {
    const KernelSpec s = mean_level(q);
    const SolverConfig cfg{static_cast<std::size_t>(state.range(0)), 5.0, scheme};
    for (auto _ : state) benchmark::DoNotOptimize(solve(s, cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Solve, product_trapezoid, Scheme::ProductTrapezoid, 1.0)
    ->RangeMultiplier(2)->Range(128, 2048)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, block_by_block, Scheme::BlockByBlock, 1.0)
    ->RangeMultiplier(2)->Range(128, 2048)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, midpoint_q_minus1, Scheme::MidpointFirstKind, -1.0)
    ->RangeMultiplier(2)->Range(128, 2048)->Complexity()->Unit(benchmark::kMillisecond);

void BM_FptLaplace(benchmark::State& state) {
    double lambda = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpt_laplace(kParams, 1.0, 0.0, lambda));
        lambda = lambda < 20.0 ? lambda * 1.05 : 0.01;
    }
}
BENCHMARK(BM_FptLaplace);

void BM_MonteCarlo(benchmark::State& state) {
    MCConfig cfg;
    cfg.n_paths = 10'000;
    cfg.seed = 1;
    cfg.t_max = 5.0;
    cfg.block_size = 1024;
    cfg.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_fpt(kParams, ConstantThreshold{1.0}, 0.0, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_paths));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
