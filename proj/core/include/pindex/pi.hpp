#pragma once

#include <map>
#include <optional>
#include <utility>

#include "pindex/model_space.hpp"
#include "pindex/types.hpp"

namespace pindex {

// Default classification cutoffs: 1.6 for nested-order families, 1.2 for
// all-subset families. Overridable everywhere a cutoff is accepted.
double default_cutoff(FamilyKind kind);

Classification classify(double pi, double cutoff);

// The parametricness index of a selected model: the minimum over its
// one-rank-less sub-models of ic(sub) / ic(selected), where both criteria use
// the same reference noise variance (the known value, or the selected model's
// estimate held fixed). A rank-1 selection has no meaningful sub-model and
// returns the sentinel value n.
PiReport compute_pi(const Dataset& dataset, const SelectionResult& selected,
                    const Family& family, const IcConfig& cfg, double cutoff);

// Adaptive criterion switch: model selection follows AIC when the index
// (computed from the BIC selection) is below the cutoff, BIC otherwise.
struct AdaptiveResult {
  SelectionResult chosen;
  SelectionResult aic;
  SelectionResult bic;
  PiReport pi;
};
AdaptiveResult adaptive_select(const Dataset& dataset, const Family& family,
                               const IcConfig& cfg, double cutoff);

// Oracle quantities for simulation diagnostics; defined only when the true
// mean vector is known. a_n is present only when the true model is supplied.
struct ConditionDiagnostics {
  std::optional<double> a_n;
  std::map<int, double> b_jn;
  std::map<int, double> e_jn;
};
ConditionDiagnostics oracle_conditions(const Vec& truth, double sigma2,
                                       const Family& family, const Dataset& dataset,
                                       const IcConfig& cfg,
                                       std::pair<int, int> j_range,
                                       const std::optional<ModelSpec>& true_model);

}  // namespace pindex
