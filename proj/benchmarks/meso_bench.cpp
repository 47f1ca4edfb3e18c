#include <benchmark/benchmark.h>

#include "meso/block_modularity.hpp"
#include "meso/generators.hpp"
#include "meso/inference.hpp"

namespace {

meso::PlantedGraph planted(std::size_t group_size) {
  return meso::planted_core_periphery_network(meso::RngSeed{1}, group_size);
}

void BM_BlockSummary(benchmark::State& state) {
  const auto pg = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(meso::block_summary(pg.graph, pg.partition));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pg.graph.edge_count()));
}
BENCHMARK(BM_BlockSummary)->Arg(30)->Arg(300)->Arg(3000);

void BM_QMatrixAndModularity(benchmark::State& state) {
  const auto pg = planted(30);
  const auto bs = meso::block_summary(pg.graph, pg.partition);
  const meso::BlockMatrix b({{1, 1, -1}, {1, -1, -1}, {-1, -1, 1}});
  for (auto _ : state) {
    const auto q = meso::q_matrix(bs, meso::NullModel::configuration());
    benchmark::DoNotOptimize(meso::block_modularity(q, b));
  }
}
BENCHMARK(BM_QMatrixAndModularity);

void BM_GreedyOptimize(benchmark::State& state) {
  const auto pg = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(meso::greedy_optimize(pg.graph, 3, {1, 100, meso::RngSeed{2}}));
}
BENCHMARK(BM_GreedyOptimize)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ConfigurationSample(benchmark::State& state) {
  const auto pg = planted(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(meso::configuration_sample(pg.graph, meso::RngSeed{++seed}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pg.graph.edge_count()));
}
BENCHMARK(BM_ConfigurationSample)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
