#pragma once

#include <cstddef>

#include "pindex/types.hpp"

namespace pindex {

// Information criterion used by the index: for a model fit with residual sum
// of squares rss and rank r, at reference noise variance s2,
//   ic = rss + lambda * log(n) * r * s2 - n * s2 + d * sqrt(n) * log(n) * s2.
// The caller controls s2: the known noise variance, or the estimate from the
// selected model (held fixed across its sub-models).
double ic_value(const FitSummary& fit, std::size_t n, const IcConfig& cfg,
                double sigma2_ref);

// Profile selection scores: n * log(rss/n) + penalty * rank, with penalty 2
// (aic) or log(n) (bic). A perfect fit (rss == 0) returns -infinity so it
// wins any comparison.
double aic_score(const FitSummary& fit, std::size_t n);
double bic_score(const FitSummary& fit, std::size_t n);
double criterion_score(Criterion crit, const FitSummary& fit, std::size_t n);

// Deterministic selection order: smaller score wins; ties prefer smaller
// rank, then lexicographically smaller term sets, then a present intercept.
bool selection_preferred(double score_a, const ModelSpec& a, double score_b,
                         const ModelSpec& b);

}  // namespace pindex
