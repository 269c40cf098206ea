#pragma once

#include <cstdint>
#include <map>

#include "pindex/model_space.hpp"
#include "pindex/types.hpp"

namespace pindex {

struct SizeChampion {
  ModelSpec model;
  double rss = 0.0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t bound_evaluations = 0;
  std::uint64_t pruned = 0;
};

// For each subset size s in 1..p, the s-term subset (with forced intercept)
// of minimum residual sum of squares. Branch-and-bound over the subset
// lattice; champion fits are recomputed with the canonical factorization so
// results match exhaustive enumeration exactly. Ties break to the
// lexicographically smaller term set.
std::map<int, SizeChampion> best_rss_per_size(const Dataset& dataset, int p,
                                              SearchStats* stats = nullptr);

// Reference implementation: full enumeration of all 2^p - 1 subsets. Used by
// tests and as the small-p fallback.
std::map<int, SizeChampion> best_rss_per_size_exhaustive(const Dataset& dataset,
                                                         int p);

// Best model in the family under one criterion. Nested families scan orders
// 1..max_order; all-subset families score the per-size champions (valid
// because both criteria are monotone in rss at fixed size).
SelectionResult select_best(const Dataset& dataset, const Family& family,
                            Criterion crit);

// Both criteria from one search (champions are shared).
struct DualSelection {
  SelectionResult aic;
  SelectionResult bic;
};
DualSelection select_both(const Dataset& dataset, const Family& family);

}  // namespace pindex
