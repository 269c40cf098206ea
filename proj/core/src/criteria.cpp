#include "pindex/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pindex/errors.hpp"

namespace pindex {

double ic_value(const FitSummary& fit, std::size_t n, const IcConfig& cfg,
                double sigma2_ref) {
  if (n < 2) throw ParamError("ic_value: n must be at least 2");
  if (!(sigma2_ref > 0.0)) {
    throw ParamError("ic_value: reference sigma^2 must be positive");
  }
  const double nn = static_cast<double>(n);
  const double logn = std::log(nn);
  return fit.rss + cfg.lambda * logn * static_cast<double>(fit.rank) * sigma2_ref -
         nn * sigma2_ref + cfg.d * std::sqrt(nn) * logn * sigma2_ref;
}

namespace {

double profile_score(const FitSummary& fit, std::size_t n, double penalty) {
  if (static_cast<std::size_t>(fit.rank) >= n) {
    throw ParamError("profile score: rank must be below n");
  }
  if (fit.rss <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  const double nn = static_cast<double>(n);
  return nn * std::log(fit.rss / nn) + penalty * static_cast<double>(fit.rank);
}

}  // namespace

double aic_score(const FitSummary& fit, std::size_t n) {
  return profile_score(fit, n, 2.0);
}

double bic_score(const FitSummary& fit, std::size_t n) {
  return profile_score(fit, n, std::log(static_cast<double>(n)));
}

double criterion_score(Criterion crit, const FitSummary& fit, std::size_t n) {
  return crit == Criterion::aic ? aic_score(fit, n) : bic_score(fit, n);
}

bool selection_preferred(double score_a, const ModelSpec& a, double score_b,
                         const ModelSpec& b) {
  if (score_a != score_b) return score_a < score_b;
  const auto effective_rank = [](const ModelSpec& m) {
    if (m.rank >= 0) return static_cast<std::size_t>(m.rank);
    return m.terms.size() + (m.intercept ? 1u : 0u);
  };
  const std::size_t ra = effective_rank(a), rb = effective_rank(b);
  if (ra != rb) return ra < rb;
  if (a.terms != b.terms) {
    return std::lexicographical_compare(a.terms.begin(), a.terms.end(),
                                        b.terms.begin(), b.terms.end());
  }
  return a.intercept && !b.intercept;
}

}  // namespace pindex
