#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>

#include "pindex/linalg.hpp"
#include "pindex/model_space.hpp"
#include "pindex/rng.hpp"
#include "pindex/types.hpp"

namespace {

pindex::Dataset gaussian_data(std::size_t n, int p, std::uint64_t seed) {
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
    d.y[i] = 2.0 * d.design.columns[0][i] - d.design.columns[1][i] +
             rng.normal();
  return d;
}

void BM_LeastSquaresFit(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto data = gaussian_data(200, p, 17);
  pindex::ModelSpec model;
  for (int j = 0; j < p; ++j) model.terms.push_back(j);
  for (auto _ : state) {
    auto fit = pindex::least_squares_fit(data, model);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(BM_LeastSquaresFit)->Arg(5)->Arg(10)->Arg(20);

void BM_PolynomialFit(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  pindex::Rng rng(23);
  pindex::Vec x(400), y(400);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = 1.0 + x[i] - 0.5 * x[i] * x[i] + rng.normal();
  }
  pindex::Dataset raw;
  raw.y = y;
  raw.design.n = x.size();
  raw.design.columns.push_back(x);
  raw.design.labels.push_back("x");
  const auto data = pindex::expand_nested_dataset(raw, order);
  pindex::ModelSpec model;
  for (int j = 0; j < order; ++j) model.terms.push_back(j);
  for (auto _ : state) {
    auto fit = pindex::least_squares_fit(data, model);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(BM_PolynomialFit)->Arg(5)->Arg(15)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
