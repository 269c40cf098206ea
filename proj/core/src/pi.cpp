#include "pindex/pi.hpp"

#include <cmath>
#include <limits>

#include "pindex/criteria.hpp"
#include "pindex/errors.hpp"
#include "pindex/linalg.hpp"
#include "pindex/subset_search.hpp"

namespace pindex {

double default_cutoff(FamilyKind kind) {
  return kind == FamilyKind::nested_order ? 1.6 : 1.2;
}

Classification classify(double pi, double cutoff) {
  return pi >= cutoff ? Classification::practically_parametric
                      : Classification::practically_nonparametric;
}

PiReport compute_pi(const Dataset& dataset, const SelectionResult& selected,
                    const Family& family, const IcConfig& cfg, double cutoff) {
  const std::size_t n = dataset.n();
  PiReport report;
  report.selected = selected.model;
  report.selected.rank = selected.fit.rank;
  report.sigma_mode = cfg.sigma_mode;
  report.cutoff_used = cutoff;

  const int r = selected.fit.rank;
  if (r <= 1) {
    report.pi = static_cast<double>(n);
    report.sentinel = true;
    report.sigma2_ref = cfg.sigma_mode == SigmaMode::known
                            ? cfg.sigma2
                            : selected.fit.sigma_hat2;
    report.classification = classify(report.pi, cutoff);
    return report;
  }

  double sigma2_ref = 0.0;
  if (cfg.sigma_mode == SigmaMode::known) {
    if (!(cfg.sigma2 > 0.0)) {
      throw ParamError("compute_pi: known sigma^2 must be positive");
    }
    sigma2_ref = cfg.sigma2;
  } else {
    if (static_cast<std::size_t>(r) >= n) {
      throw ParamError("compute_pi: saturated fit leaves no noise estimate");
    }
    sigma2_ref = selected.fit.rss / static_cast<double>(n - r);
    if (!(sigma2_ref > 0.0)) {
      throw DiagnosticError(
          "compute_pi: the selected model fits perfectly; the estimated noise "
          "variance is zero");
    }
  }
  report.sigma2_ref = sigma2_ref;
  report.ic_selected = ic_value(selected.fit, n, cfg, sigma2_ref);

  const std::vector<ModelSpec> subs =
      submodels_one_less(report.selected, dataset, family);
  if (subs.empty()) {
    throw DiagnosticError(
        "compute_pi: no sub-model loses exactly one rank; the index is "
        "undefined for this design");
  }

  const bool degenerate =
      cfg.sigma_mode == SigmaMode::known && report.ic_selected <= 0.0;
  report.degenerate = degenerate;
  const double denom =
      degenerate ? std::fabs(report.ic_selected) : report.ic_selected;

  double best_ratio = std::numeric_limits<double>::infinity();
  for (const ModelSpec& sub : subs) {
    const FitSummary fit = least_squares_fit(dataset, sub);
    const double ic_sub = ic_value(fit, n, cfg, sigma2_ref);
    report.submodel_ics.emplace_back(sub, ic_sub);
    const double ratio = (degenerate ? std::fabs(ic_sub) : ic_sub) / denom;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      report.argmin_submodel = sub;
    }
  }
  report.pi = best_ratio;
  report.classification = classify(report.pi, cutoff);
  return report;
}

AdaptiveResult adaptive_select(const Dataset& dataset, const Family& family,
                               const IcConfig& cfg, double cutoff) {
  DualSelection dual = select_both(dataset, family);
  PiReport pi = compute_pi(dataset, dual.bic, family, cfg, cutoff);
  AdaptiveResult out;
  out.chosen = (pi.pi < cutoff) ? dual.aic : dual.bic;
  out.aic = std::move(dual.aic);
  out.bic = std::move(dual.bic);
  out.pi = std::move(pi);
  return out;
}

ConditionDiagnostics oracle_conditions(const Vec& truth, double sigma2,
                                       const Family& family, const Dataset& dataset,
                                       const IcConfig& cfg,
                                       std::pair<int, int> j_range,
                                       const std::optional<ModelSpec>& true_model) {
  if (!(sigma2 > 0.0)) throw ParamError("oracle_conditions: sigma^2 must be positive");
  if (truth.size() != dataset.n()) {
    throw DataError("oracle_conditions: truth length differs from dataset");
  }
  const std::size_t n = dataset.n();
  const double logn = std::log(static_cast<double>(n));
  const double root_n_logn = std::sqrt(static_cast<double>(n)) * logn;

  ConditionDiagnostics out;

  // Best approximation error of the truth at each achievable rank.
  std::map<int, double> best_resid_by_rank;
  Dataset truth_ds = dataset;
  truth_ds.y = truth;
  if (family.kind() == FamilyKind::nested_order) {
    for (int order = 0; order <= family.config().max_order; ++order) {
      const ModelSpec m = family.model_for_order(order);
      const FitSummary fit = least_squares_fit(truth_ds, m);
      auto it = best_resid_by_rank.find(fit.rank);
      if (it == best_resid_by_rank.end() || fit.rss < it->second) {
        best_resid_by_rank[fit.rank] = fit.rss;
      }
    }
  } else {
    const auto champs =
        best_rss_per_size(truth_ds, family.config().predictor_count, nullptr);
    {
      // The intercept-only floor.
      ModelSpec floor_model;
      floor_model.intercept = true;
      const FitSummary fit = least_squares_fit(truth_ds, floor_model);
      best_resid_by_rank[fit.rank] = fit.rss;
    }
    for (const auto& [size, champ] : champs) {
      const FitSummary fit = least_squares_fit(truth_ds, champ.model);
      auto it = best_resid_by_rank.find(fit.rank);
      if (it == best_resid_by_rank.end() || fit.rss < it->second) {
        best_resid_by_rank[fit.rank] = fit.rss;
      }
    }
  }

  for (const auto& [rank, resid] : best_resid_by_rank) {
    if (rank < j_range.first || rank > j_range.second) continue;
    if (static_cast<std::size_t>(rank) >= n) continue;
    const double j = static_cast<double>(rank);
    const double base = (cfg.lambda * logn - 1.0) * j + cfg.d * root_n_logn;
    out.b_jn[rank] = base + resid / sigma2;
    out.e_jn[rank] =
        base * (1.0 + resid / ((static_cast<double>(n) - j) * sigma2));
  }

  if (true_model.has_value()) {
    const std::vector<ModelSpec> subs =
        submodels_one_less(*true_model, dataset, family);
    if (!subs.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (const ModelSpec& sub : subs) {
        best = std::min(best, oracle_residual_norm(truth, sub, dataset));
      }
      out.a_n = best / sigma2;
    }
  }
  return out;
}

}  // namespace pindex
