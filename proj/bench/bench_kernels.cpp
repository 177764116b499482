// Serial reference loops vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "kuracycle/analysis.hpp"
#include "kuracycle/dynamics.hpp"
#include "kuracycle/rng.hpp"
#include "kuracycle/solver.hpp"

using namespace kuracycle;

namespace {

CycleInstance instance_for(int N)
{
    auto rng = substream(42, kInstanceStream, 0);
    return sample_generic_instance(N, rng);
}

void BM_SolveAll(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    const CycleInstance inst = instance_for(N);
    SolverConfig cfg;
    cfg.seed = 42;
    cfg.parallel = state.range(1) != 0;
    for (auto _ : state) {
        const Census c = solve_all(inst, cfg);
        benchmark::DoNotOptimize(c.report.total);
    }
    state.SetLabel(cfg.parallel ? "openmp" : "serial");
}

void BM_Multistart(benchmark::State& state)
{
    const CycleInstance inst = instance_for(5);
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) {
        const auto roots = multistart_roots(inst, 2000, 7, parallel);
        benchmark::DoNotOptimize(roots.size());
    }
    state.SetLabel(parallel ? "openmp" : "serial");
}

void BM_Equilibria(benchmark::State& state)
{
    OdeConfig cfg;
    cfg.K = 1.0;
    cfg.omega = RVector::LinSpaced(4, -0.08, 0.06);
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) {
        const auto eq = find_stable_equilibria(cfg, 64, 3, parallel);
        benchmark::DoNotOptimize(eq.size());
    }
    state.SetLabel(parallel ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_SolveAll)->ArgsProduct({{6, 8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multistart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Equilibria)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
