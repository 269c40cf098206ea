#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>

#include "pindex/model_space.hpp"
#include "pindex/rng.hpp"
#include "pindex/subset_search.hpp"
#include "pindex/types.hpp"

namespace {

pindex::Dataset search_data(std::size_t n, int p, std::uint64_t seed) {
  pindex::Rng rng(seed);
  pindex::Dataset d;
  d.design.n = n;
  for (int j = 0; j < p; ++j) {
    pindex::Vec col(n);
    for (double& v : col) v = rng.normal();
    d.design.columns.push_back(std::move(col));
    d.design.labels.push_back("x" + std::to_string(j + 1));
  }
  d.y.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    d.y[i] = 1.5 * d.design.columns[0][i] - d.design.columns[2][i] +
             0.5 * d.design.columns[4][i] + rng.normal();
  return d;
}

void BM_BranchAndBound(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto data = search_data(150, p, 31);
  pindex::SearchStats stats;
  for (auto _ : state) {
    auto champions = pindex::best_rss_per_size(data, p, &stats);
    benchmark::DoNotOptimize(champions);
  }
  state.counters["nodes"] = static_cast<double>(stats.nodes);
  state.counters["pruned"] = static_cast<double>(stats.pruned);
}
BENCHMARK(BM_BranchAndBound)->Arg(10)->Arg(14)->Arg(18);

void BM_ExhaustiveSubsets(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto data = search_data(150, p, 31);
  for (auto _ : state) {
    auto champions = pindex::best_rss_per_size_exhaustive(data, p);
    benchmark::DoNotOptimize(champions);
  }
}
BENCHMARK(BM_ExhaustiveSubsets)->Arg(10)->Arg(14);

void BM_DualSelection(benchmark::State& state) {
  const int p = 12;
  const auto data = search_data(200, p, 47);
  pindex::FamilyConfig fc;
  fc.kind = pindex::FamilyKind::all_subset;
  fc.predictor_count = p;
  const pindex::Family family(fc);
  for (auto _ : state) {
    auto both = pindex::select_both(data, family);
    benchmark::DoNotOptimize(both);
  }
}
BENCHMARK(BM_DualSelection);

}  // namespace
