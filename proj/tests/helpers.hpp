#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pindex/rng.hpp"
#include "pindex/types.hpp"

namespace testutil {

using pindex::Dataset;
using pindex::Vec;

// Gaussian design with a 3-term linear signal plus noise.
inline Dataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t p,
                              double noise = 1.0) {
  pindex::Rng rng(seed);
  Dataset d;
  d.design.n = n;
  d.design.columns.assign(p, Vec(n));
  for (auto& c : d.design.columns)
    for (auto& v : c) v = rng.normal();
  d.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = 0.0;
    const std::size_t signal = std::min<std::size_t>(p, 3);
    for (std::size_t j = 0; j < signal; ++j)
      m += (static_cast<double>(j) + 1.0) * d.design.columns[j][i];
    d.y[i] = m + noise * rng.normal();
  }
  for (std::size_t j = 0; j < p; ++j)
    d.design.labels.push_back("x" + std::to_string(j + 1));
  return d;
}

// Dataset whose columns are sign patterns, mutually orthogonal and orthogonal
// to the intercept; all inner products are exact in floating point.
inline Dataset sign_design(const Vec& y, const std::vector<Vec>& columns) {
  Dataset d;
  d.y = y;
  d.design.n = y.size();
  d.design.columns = columns;
  for (std::size_t j = 0; j < columns.size(); ++j)
    d.design.labels.push_back("s" + std::to_string(j + 1));
  return d;
}

}  // namespace testutil
