#include <benchmark/benchmark.h>

#include "tempinf/cascade.hpp"
#include "tempinf/centrality.hpp"
#include "tempinf/generate.hpp"

namespace {

const tempinf::TemporalNetwork& network() {
  static const tempinf::TemporalNetwork net = [] {
    auto spec = tempinf::preset_spec("bandnet1");
    spec.rng_seed = 42;
    return tempinf::bandnet(spec);
  }();
  return net;
}

void BM_Closeness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tempinf::temporal_closeness(network()));
}

void BM_PageRank(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tempinf::temporal_pagerank(network(), {}));
}

void BM_Eigenvector(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tempinf::temporal_eigenvector(network(), {}));
}

void BM_Katz(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tempinf::temporal_katz(network(), {}));
}

// Argument: Monte-Carlo runs per (node, slice) seed.
void BM_TICM(benchmark::State& state) {
  tempinf::CascadeConfig cfg;
  cfg.runs = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(tempinf::ticm_scores(network(), cfg));
  state.SetItemsProcessed(state.iterations() * cfg.runs *
                          static_cast<long>(network().num_nodes()) * network().num_slices());
}

void BM_Generate(benchmark::State& state) {
  auto spec = tempinf::preset_spec("bandnet3");
  for (auto _ : state) {
    spec.rng_seed++;
    benchmark::DoNotOptimize(tempinf::bandnet(spec));
  }
}

}  // namespace

BENCHMARK(BM_Closeness)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PageRank)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Eigenvector)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Katz)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TICM)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
