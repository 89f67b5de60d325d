#include <benchmark/benchmark.h>

#include "eser/constraints.hpp"
#include "eser/generators.hpp"
#include "eser/search.hpp"

namespace {

using namespace eser;

void BM_RootPropagation(benchmark::State& state) {
  const Model m = gen_queens(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sp = build_space(m);
    sp->schedule_all();
    benchmark::DoNotOptimize(sp->propagate());
  }
}
BENCHMARK(BM_RootPropagation)->Arg(8)->Arg(16)->Arg(32);

// Cost of one full explanation at every failure of a STD run.
void BM_ExplainAtFailures(benchmark::State& state) {
  const Model m = gen_randcsp(16, 6, 0.5, 0.42, 5);
  const bool partial = state.range(0) != 0;
  std::uint64_t visited = 0;
  for (auto _ : state) {
    SearchOptions so;
    so.on_failure = [&](const FailureView& v) {
      ScanProbe p;
      benchmark::DoNotOptimize(v.explain(partial, &p));
      visited += p.visits;
    };
    solve(m, so);
  }
  state.counters["events"] = benchmark::Counter(static_cast<double>(visited), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_ExplainAtFailures)->Arg(0)->Arg(1);

void BM_Pigeonhole(benchmark::State& state) {
  const Model m = gen_pigeonhole(6, 5, static_cast<int>(state.range(1)));
  SearchOptions so;
  so.engine = static_cast<EngineKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, so).stats.nodes);
  state.SetLabel(to_string(so.engine));
}
BENCHMARK(BM_Pigeonhole)->ArgsProduct({{0, 1, 2, 3}, {0, 4}})->Unit(benchmark::kMillisecond);

void BM_RandomCsp(benchmark::State& state) {
  SearchOptions so;
  so.engine = static_cast<EngineKind>(state.range(0));
  for (auto _ : state)
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      benchmark::DoNotOptimize(solve(gen_randcsp(20, 8, 0.4, 0.45, seed), so).status);
  state.SetLabel(to_string(so.engine));
}
BENCHMARK(BM_RandomCsp)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
