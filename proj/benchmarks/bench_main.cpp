#include <benchmark/benchmark.h>

#include "citnet/analysis.hpp"
#include "citnet/convergence.hpp"
#include "citnet/mainpath.hpp"
#include "citnet/netgen.hpp"
#include "citnet/persistence.hpp"

using namespace citnet;

namespace {

CitationNetwork generated(int n) {
  netgen::GenerationConfig cfg;
  cfg.n = n;
  cfg.seed = 12345;
  return netgen::generate(cfg).first;
}

void BM_Generate(benchmark::State& state) {
  netgen::GenerationConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.seed = 12345;
  for (auto _ : state) {
    auto net = netgen::generate(cfg).first;
    benchmark::DoNotOptimize(net.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Persistence(benchmark::State& state) {
  const auto net = generated(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto p = persistence::persistence_scores(net);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Persistence)->Arg(1000)->Arg(10000)->Arg(30000)
    ->Unit(benchmark::kMillisecond);

void BM_MainPaths(benchmark::State& state) {
  const auto net = generated(static_cast<int>(state.range(0)));
  const auto raw = persistence::persistence_scores(net);
  const auto table =
      persistence::normalize_and_select(net, raw, net.assign_layers(), 0.5);
  for (auto _ : state) {
    auto mpg = mainpath::build_segments(net, table);
    benchmark::DoNotOptimize(mpg.segments.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MainPaths)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Combine(benchmark::State& state) {
  const auto a = generated(static_cast<int>(state.range(0)));
  const auto b = generated(static_cast<int>(state.range(0)));
  convergence::ConvergenceConfig cfg;
  cfg.seed = 7;
  for (auto _ : state) {
    auto c = convergence::combine(a, b, cfg);
    benchmark::DoNotOptimize(c.network.edge_count());
  }
}
BENCHMARK(BM_Combine)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FullAnalysis(benchmark::State& state) {
  const auto net = generated(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = analysis::analyze(net, 0.5);
    benchmark::DoNotOptimize(r.report.rows.size());
  }
}
BENCHMARK(BM_FullAnalysis)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
