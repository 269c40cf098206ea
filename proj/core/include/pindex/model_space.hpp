#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pindex/types.hpp"

namespace pindex {

// A candidate-model family. Nested families index polynomial orders over a
// single-predictor power design (term j holds x^{j+1}); all-subset families
// range over nonempty subsets of the design's term columns with a forced
// intercept (or a selectable one, for the permissive policy).
class Family {
 public:
  explicit Family(FamilyConfig config);

  const FamilyConfig& config() const { return config_; }
  FamilyKind kind() const { return config_.kind; }

  // Number of candidate models: max_order for nested, 2^p - 1 for subsets
  // (doubled when the intercept is selectable).
  std::uint64_t model_count() const;

  // Nested families only: the model of the given order (1..max_order). Order
  // k includes terms x^1..x^k plus the intercept.
  ModelSpec model_for_order(int order) const;

  // All-subset families only: the model whose included terms are the set
  // bits of `mask`. Used by exhaustive oracles and tests.
  ModelSpec model_for_mask(std::uint64_t mask, bool intercept = true) const;

  int order_of(const ModelSpec& model) const;

 private:
  FamilyConfig config_;
};

Family build_family(const FamilyConfig& config);

// The sub-models of `model` whose realized rank on this dataset is exactly
// one less than the model's realized rank. Nested families yield at most one
// (the highest lower order that sheds a rank); all-subset families yield one
// candidate per dropped term, rank-verified, plus the intercept-dropped
// candidate under the selectable policy. An intercept-only parent (or an
// empty one) yields the empty list.
std::vector<ModelSpec> submodels_one_less(const ModelSpec& model,
                                          const Dataset& dataset,
                                          const Family& family);

// Power design for polynomial regression: columns [1, x, x^2, ..., x^max],
// intercept first, labels "x^0".."x^max".
DesignMatrix build_polynomial_design(const Vec& x, int max_order);

// Rebuilds a single-predictor dataset for nested-order selection: the one
// predictor column x becomes term columns x^1..x^max (the intercept stays a
// ModelSpec flag). truth/sigma carry over.
Dataset expand_nested_dataset(const Dataset& raw, int max_order);

// Compact model label: nested models as "order=k"; subset models as the
// concatenation of per-term digits 1-9 then letters A-Z (term 0 -> '1',
// term 8 -> '9', term 9 -> 'A'). An intercept-only model is "const".
std::string model_label(const ModelSpec& model, const Family& family);

}  // namespace pindex
