#include <benchmark/benchmark.h>

#include "ubgd/ubgd.hpp"

namespace {

using namespace ubgd;

void BM_Norm(benchmark::State& state) {
    Vector v(static_cast<std::size_t>(state.range(0)), 1.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm(v));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Norm)->Arg(8)->Arg(128)->Arg(4096);

void BM_BacktrackingSearch_Rosenbrock(benchmark::State& state) {
    const CorpusEntry* entry = corpus_find("rosenbrock");
    const Objective obj = entry->make_objective();
    const Vector x{-1.2, 1.0};
    const LineSearchParams params;
    const double fx = obj.value(x);
    const Vector g = obj.gradient(x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(backtracking_search(obj, x, fx, g, params));
    }
}
BENCHMARK(BM_BacktrackingSearch_Rosenbrock);

void BM_GrowthSearch_QuarticFlat(benchmark::State& state) {
    const CorpusEntry* entry = corpus_find("quartic-1d");
    const Objective obj = entry->make_objective();
    const Vector x{0.1};
    const LineSearchParams params;
    const GrowthFunction h = GrowthFunction::power_law(1.0, 0.5);
    const double fx = obj.value(x);
    const Vector g = obj.gradient(x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_search(obj, x, fx, g, params, h));
    }
}
BENCHMARK(BM_GrowthSearch_QuarticFlat);

void BM_TwoWaySearch_Quartic(benchmark::State& state) {
    const CorpusEntry* entry = corpus_find("quartic-1d");
    const Objective obj = entry->make_objective();
    const Vector x{1.0};
    const LineSearchParams params;
    const double fx = obj.value(x);
    const Vector g = obj.gradient(x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_way_search(obj, x, fx, g, WarmStart{0.25, 2}, params));
    }
}
BENCHMARK(BM_TwoWaySearch_Quartic);

void BM_RunBacktracking_Rosenbrock(benchmark::State& state) {
    const CorpusEntry* entry = corpus_find("rosenbrock");
    RunConfig cfg;
    cfg.scheme = BacktrackingScheme{};
    cfg.x0 = {-1.2, 1.0};
    cfg.max_iters = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const Objective obj = entry->make_objective();
        benchmark::DoNotOptimize(run_backtracking(obj, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunBacktracking_Rosenbrock)->Arg(100)->Arg(1000);

void BM_RunUnbounded_QuarticFlat(benchmark::State& state) {
    const CorpusEntry* entry = corpus_find("quartic-1d");
    RunConfig cfg;
    cfg.scheme = UnboundedScheme{GrowthFunction::power_law(1.0, 0.5)};
    cfg.x0 = {1.0};
    cfg.max_iters = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const Objective obj = entry->make_objective();
        benchmark::DoNotOptimize(run_unbounded(obj, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunUnbounded_QuarticFlat)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
