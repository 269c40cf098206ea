#include "pindex/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "pindex/errors.hpp"
#include "pindex/linalg.hpp"
#include "pindex/parallel.hpp"
#include "pindex/rng.hpp"
#include "pindex/stats.hpp"
#include "pindex/subset_search.hpp"

namespace pindex {

namespace {

const char* method_name(Method m) {
  switch (m) {
    case Method::bic: return "bic";
    case Method::aic: return "aic";
    case Method::adaptive: return "adaptive";
  }
  return "?";
}

const char* classification_name(Classification c) {
  return c == Classification::practically_parametric ? "practically_parametric"
                                                     : "practically_nonparametric";
}

void validate_dgp(const Dgp& dgp) {
  if (dgp.n < 2) throw ParamError("process needs at least 2 observations");
  if (!(dgp.sigma >= 0.0) || !std::isfinite(dgp.sigma))
    throw ParamError("noise level must be finite and nonnegative");
  if (dgp.family_kind == FamilyKind::nested_order) {
    if (dgp.max_order < 1) throw ParamError("max_order must be at least 1");
    if (dgp.nonlinear_u)
      throw ParamError("the smooth-component term applies only to all-subset processes");
  } else {
    if (dgp.beta.empty()) throw ParamError("all-subset process needs coefficients");
    if (!(std::abs(dgp.rho) < 1.0))
      throw ParamError("predictor correlation must lie in (-1, 1)");
  }
}

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

double smooth_component(double u) {
  return 3.0 * (1.0 - 0.5 * u + 2.0 * u * u) * std::exp(-u * u / 4.0);
}

std::vector<Vec> predictor_correlation_root(const Dgp& dgp) {
  const std::size_t p = dgp.beta.size();
  std::vector<Vec> corr(p, Vec(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j)
        corr[i][j] = 1.0;
      else if (dgp.equicorrelated)
        corr[i][j] = dgp.rho;
      else
        corr[i][j] = std::pow(dgp.rho, std::abs(static_cast<double>(i) -
                                                static_cast<double>(j)));
    }
  }
  return correlation_sqrt(corr);
}

struct FailureTally {
  std::size_t failures = 0;
  std::string first_error;
};

void enforce_failure_budget(const FailureTally& tally, std::size_t total,
                            const char* what) {
  if (tally.failures * 20 > total) {
    std::string msg = std::string(what) + ": " + std::to_string(tally.failures) +
                      " of " + std::to_string(total) + " replications failed";
    if (!tally.first_error.empty()) msg += " (first: " + tally.first_error + ")";
    throw StudyError(msg);
  }
}

std::vector<std::pair<std::string, double>> frequency_table(
    const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  std::vector<std::pair<std::string, double>> out;
  out.reserve(counts.size());
  for (const auto& [label, count] : counts)
    out.emplace_back(label, static_cast<double>(count) /
                                static_cast<double>(labels.size()));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"example1_case1", "example1_case2", "example2_case1", "example2_case2",
          "example3",       "example4",       "example5",       "example6",
          "example7",       "cubic_trend"};
}

Dgp dgp_preset(const std::string& name) {
  Dgp d;
  d.name = name;
  d.n = 200;
  if (name == "example1_case1") {
    d.family_kind = FamilyKind::nested_order;
    d.max_order = 30;
    d.sin_amp = 3.0;
    d.sigma = 3.0;
  } else if (name == "example1_case2") {
    d.family_kind = FamilyKind::nested_order;
    d.max_order = 30;
    d.poly_coef = {3.0, -5.0, 2.0, 1.5, 0.8};
    d.sigma = 7.0;
  } else if (name == "example2_case1") {
    d.family_kind = FamilyKind::nested_order;
    d.max_order = 30;
    d.poly_coef = {1.0, -2.0, 1.6, 0.5};
    d.sin_amp = 3.0;
    d.sigma = 2.0;
  } else if (name == "example2_case2") {
    d.family_kind = FamilyKind::nested_order;
    d.max_order = 30;
    d.poly_coef = {1.0, -2.0, 1.6, 0.5};
    d.sin_amp = 1.0;
    d.sigma = 2.0;
  } else if (name == "cubic_trend") {
    d.family_kind = FamilyKind::nested_order;
    d.max_order = 10;
    d.poly_coef = {1.0, -2.0, 1.6, 0.5};
    d.sigma = 2.0;
  } else if (name == "example3") {
    d.beta = {3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0};
    d.rho = 0.5;
    d.sigma = 5.0;
  } else if (name == "example4") {
    d.beta.assign(8, 0.85);
    d.rho = 0.5;
    d.sigma = 3.0;
  } else if (name == "example5") {
    d.beta = {0.9, 0.9, 0.0, 0.0, 2.0, 0.0, 0.0, 1.6, 2.2, 0.0, 0.0, 0.0, 0.0};
    d.equicorrelated = true;
    d.rho = 0.6;
    d.sigma = 3.0;
  } else if (name == "example6") {
    d.beta = {0.85, 0.85, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    d.equicorrelated = true;
    d.rho = 0.5;
    d.sigma = 3.0;
  } else if (name == "example7") {
    d.beta = {3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0};
    d.rho = 0.5;
    d.sigma = 3.0;
    d.nonlinear_u = true;
  } else {
    std::string msg = "unknown preset '" + name + "'; valid presets:";
    for (const auto& p : preset_names()) msg += " " + p;
    throw ParamError(msg);
  }
  return d;
}

Family dgp_family(const Dgp& dgp) {
  validate_dgp(dgp);
  FamilyConfig cfg;
  cfg.kind = dgp.family_kind;
  cfg.intercept_policy = InterceptPolicy::always;
  if (dgp.family_kind == FamilyKind::nested_order) {
    cfg.max_order = dgp.max_order;
  } else {
    cfg.predictor_count =
        static_cast<int>(dgp.beta.size()) + (dgp.nonlinear_u ? 8 : 0);
  }
  return Family(cfg);
}

std::vector<int> true_term_indices(const Dgp& dgp) {
  std::vector<int> out;
  for (std::size_t i = 0; i < dgp.beta.size(); ++i)
    if (dgp.beta[i] != 0.0) out.push_back(static_cast<int>(i));
  return out;
}

Dataset generate_dataset(const Dgp& dgp, std::uint64_t seed) {
  validate_dgp(dgp);
  Rng rng(seed);
  const std::size_t n = dgp.n;

  if (dgp.family_kind == FamilyKind::nested_order) {
    // Draw order: all x, then all noise.
    Vec x(n);
    for (auto& v : x) v = rng.normal();
    Vec f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double m = 0.0, pw = 1.0;
      for (double c : dgp.poly_coef) {
        m += c * pw;
        pw *= x[i];
      }
      if (dgp.sin_amp != 0.0)
        m += dgp.sin_amp * std::sin(kTwoPi * x[i]);
      f[i] = m;
    }
    Dataset raw;
    raw.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) raw.y[i] = f[i] + dgp.sigma * rng.normal();
    raw.design.n = n;
    raw.design.columns = {x};
    raw.design.labels = {"x"};
    raw.truth = std::move(f);
    raw.sigma = dgp.sigma;
    return expand_nested_dataset(raw, dgp.max_order);
  }

  // Draw order: per row, the predictor normals (transformed through the
  // correlation square root); then the u variable per row if present; then
  // all noise.
  const std::size_t p = dgp.beta.size();
  const std::size_t q = p + (dgp.nonlinear_u ? 8 : 0);
  const std::vector<Vec> root = predictor_correlation_root(dgp);
  Dataset out;
  out.design.n = n;
  out.design.columns.assign(q, Vec(n));
  Vec f(n, 0.0);
  Vec z(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : z) v = rng.normal();
    for (std::size_t k = 0; k < p; ++k) {
      double xk = 0.0;
      for (std::size_t l = 0; l < p; ++l) xk += root[k][l] * z[l];
      out.design.columns[k][i] = xk;
      f[i] += dgp.beta[k] * xk;
    }
  }
  if (dgp.nonlinear_u) {
    Vec u(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = rng.uniform(-4.0, 4.0);
      f[i] += smooth_component(u[i]);
    }
    Vec pw = u;
    out.design.columns[p] = u;
    for (std::size_t m = 2; m <= 8; ++m) {
      for (std::size_t i = 0; i < n; ++i) pw[i] *= u[i];
      out.design.columns[p + m - 1] = pw;
    }
  }
  out.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.y[i] = f[i] + dgp.sigma * rng.normal();
  out.design.labels.resize(q);
  for (std::size_t k = 0; k < p; ++k)
    out.design.labels[k] = "x" + std::to_string(k + 1);
  for (std::size_t k = p; k < q; ++k)
    out.design.labels[k] = "u^" + std::to_string(k - p + 1);
  out.truth = std::move(f);
  out.sigma = dgp.sigma;
  return out;
}

SimSummary run_replications(const Dgp& dgp, std::size_t reps, Method method,
                            const IcConfig& cfg, double cutoff,
                            std::uint64_t base_seed, int workers) {
  if (reps == 0) throw ParamError("replication count must be positive");
  const Family family = dgp_family(dgp);

  SimSummary out;
  out.dgp_name = dgp.name;
  out.method = method_name(method);
  out.reps = reps;
  out.base_seed = base_seed;
  out.cutoff = cutoff;
  out.records.assign(reps, RepRecord{});

  parallel_for(reps, workers, [&](std::size_t r) {
    RepRecord& rec = out.records[r];
    rec.rep = r;
    try {
      const Dataset data = generate_dataset(dgp, base_seed + r);
      const DualSelection dual = select_both(data, family);
      const PiReport pi = compute_pi(data, dual.bic, family, cfg, cutoff);
      const SelectionResult& chosen =
          method == Method::aic
              ? dual.aic
              : (method == Method::adaptive && pi.pi < cutoff ? dual.aic
                                                              : dual.bic);
      rec.model_label = model_label(chosen.model, family);
      rec.model_size = family.order_of(chosen.model);
      rec.rank = chosen.fit.rank;
      rec.pi = pi.pi;
      rec.pi_sentinel = pi.sentinel;
      rec.sigma_hat = std::sqrt(chosen.fit.sigma_hat2);
      rec.tse = tse(*data.truth, chosen.fit);
      rec.classification = classification_name(pi.classification);
      rec.ok = true;
    } catch (const Error& e) {
      rec.error = e.what();
    }
  });

  FailureTally tally;
  std::vector<double> pis, sizes, sigmas, tses;
  std::vector<std::string> labels;
  for (const auto& rec : out.records) {
    if (!rec.ok) {
      ++tally.failures;
      if (tally.first_error.empty()) tally.first_error = rec.error;
      continue;
    }
    pis.push_back(rec.pi);
    sizes.push_back(static_cast<double>(rec.model_size));
    sigmas.push_back(rec.sigma_hat);
    tses.push_back(rec.tse);
    labels.push_back(rec.model_label);
  }
  out.failures = tally.failures;
  enforce_failure_budget(tally, reps, "replication study");
  out.pi_percentiles = summary_percentiles(pis);
  out.size_percentiles = summary_percentiles(sizes);
  out.sigma_percentiles = summary_percentiles(sigmas);
  out.selection_frequency = frequency_table(labels);
  out.mean_tse = mean(tses);
  out.tse_standard_error = mean_standard_error(tses);
  return out;
}

BootstrapReport parametric_bootstrap(const Dataset& dataset,
                                     const SelectionResult& selected,
                                     const Family& family, const IcConfig& cfg,
                                     double cutoff, std::size_t b,
                                     std::uint64_t seed, int workers) {
  if (b == 0) throw ParamError("resample count must be positive");
  if (selected.fit.fitted.size() != dataset.n())
    throw ParamError("selected fit does not match the dataset");
  if (!(selected.fit.sigma_hat2 > 0.0))
    throw StudyError("parametric bootstrap needs a positive residual variance");
  const double sigma_hat = std::sqrt(selected.fit.sigma_hat2);

  struct Slot {
    bool ok = false;
    std::string error;
    bool reselected = false;
    std::string label;
    double pi = 0.0;
  };
  std::vector<Slot> slots(b);

  parallel_for(b, workers, [&](std::size_t r) {
    Slot& s = slots[r];
    try {
      Rng rng(replication_seed(seed, r));
      Dataset draw;
      draw.design = dataset.design;
      draw.y.resize(dataset.n());
      for (std::size_t i = 0; i < dataset.n(); ++i)
        draw.y[i] = selected.fit.fitted[i] + sigma_hat * rng.normal();
      const SelectionResult best = select_best(draw, family, selected.criterion);
      const PiReport pi = compute_pi(draw, best, family, cfg, cutoff);
      s.reselected = same_model(best.model, selected.model);
      s.label = model_label(best.model, family);
      s.pi = pi.pi;
      s.ok = true;
    } catch (const Error& e) {
      s.error = e.what();
    }
  });

  FailureTally tally;
  std::vector<double> pis;
  std::vector<std::string> labels;
  std::size_t reselects = 0;
  for (const auto& s : slots) {
    if (!s.ok) {
      ++tally.failures;
      if (tally.first_error.empty()) tally.first_error = s.error;
      continue;
    }
    if (s.reselected) ++reselects;
    labels.push_back(s.label);
    pis.push_back(s.pi);
  }
  enforce_failure_budget(tally, b, "parametric bootstrap");

  BootstrapReport out;
  out.resamples = b;
  out.failures = tally.failures;
  out.reselect_frequency =
      labels.empty() ? 0.0
                     : static_cast<double>(reselects) /
                           static_cast<double>(labels.size());
  out.frequency_table = frequency_table(labels);
  out.pi_percentiles = summary_percentiles(pis);
  return out;
}

SubsampleReport subsample_study(const Dataset& dataset,
                                std::vector<std::size_t> sizes, std::size_t reps,
                                std::uint64_t seed, const Family& family,
                                const IcConfig& cfg, double cutoff,
                                int workers) {
  if (sizes.empty()) throw ParamError("at least one subsample size is required");
  if (reps == 0) throw ParamError("replication count must be positive");
  const std::size_t n = dataset.n();

  std::sort(sizes.begin(), sizes.end());
  const auto tail = std::unique(sizes.begin(), sizes.end());
  SubsampleReport out;
  out.duplicates_removed = tail != sizes.end();
  sizes.erase(tail, sizes.end());
  for (std::size_t m : sizes)
    if (m < 2 || m >= n)
      throw ParamError("subsample sizes must lie in [2, n)");
  out.reps = reps;

  struct Slot {
    bool ok = false;
    std::string error;
    double pi = 0.0;
  };
  const std::size_t total = sizes.size() * reps;
  std::vector<Slot> slots(total);

  parallel_for(total, workers, [&](std::size_t idx) {
    Slot& s = slots[idx];
    const std::size_t k = idx / reps;
    const std::size_t m = sizes[k];
    try {
      Rng rng(replication_seed(seed, idx));
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.uniform() *
                                         static_cast<double>(n - i));
        std::swap(order[i], order[j]);
      }
      Dataset sub;
      sub.design.n = m;
      sub.design.labels = dataset.design.labels;
      sub.design.columns.assign(dataset.design.term_count(), Vec(m));
      sub.y.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        sub.y[i] = dataset.y[order[i]];
        for (std::size_t c = 0; c < dataset.design.term_count(); ++c)
          sub.design.columns[c][i] = dataset.design.columns[c][order[i]];
      }
      sub.sigma = dataset.sigma;
      const SelectionResult best = select_best(sub, family, Criterion::bic);
      const PiReport pi = compute_pi(sub, best, family, cfg, cutoff);
      s.pi = pi.pi;
      s.ok = true;
    } catch (const Error& e) {
      s.error = e.what();
    }
  });

  FailureTally tally;
  std::vector<std::vector<double>> per_size(sizes.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!slots[idx].ok) {
      ++tally.failures;
      if (tally.first_error.empty()) tally.first_error = slots[idx].error;
      continue;
    }
    per_size[idx / reps].push_back(slots[idx].pi);
  }
  out.failures = tally.failures;
  enforce_failure_budget(tally, total, "subsample study");
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    SubsampleCurve curve;
    curve.size = sizes[k];
    if (!per_size[k].empty())
      curve.pi_percentiles = summary_percentiles(per_size[k]);
    out.curves.push_back(std::move(curve));
  }
  return out;
}

CoverageReport coverage_study(const Dgp& dgp, double level, std::size_t reps,
                              const IcConfig& cfg, std::uint64_t seed,
                              int workers, bool oracle_fit) {
  (void)cfg;
  if (dgp.family_kind != FamilyKind::all_subset)
    throw ParamError("coverage study requires an all-subset process");
  if (!(level > 0.0 && level < 1.0))
    throw ParamError("confidence level must lie in (0, 1)");
  if (reps == 0) throw ParamError("replication count must be positive");
  const Family family = dgp_family(dgp);
  const std::vector<int> truth_terms = true_term_indices(dgp);
  if (truth_terms.empty())
    throw ParamError("coverage study needs nonzero true coefficients");

  struct Slot {
    bool ok = false;
    std::string error;
    std::vector<unsigned char> covered;
  };
  std::vector<Slot> slots(reps);

  parallel_for(reps, workers, [&](std::size_t r) {
    Slot& s = slots[r];
    try {
      const Dataset data = generate_dataset(dgp, seed + r);
      ModelSpec model;
      FitSummary fit;
      if (oracle_fit) {
        model.terms = truth_terms;
        fit = least_squares_fit(data, model);
        model.rank = fit.rank;
      } else {
        SelectionResult best = select_best(data, family, Criterion::bic);
        model = std::move(best.model);
        fit = std::move(best.fit);
      }
      if (fit.rank >= static_cast<int>(data.n()) || !(fit.sigma_hat2 > 0.0))
        throw DiagnosticError("interval width is undefined for this fit");
      const Vec diag = model_inverse_gram_diagonal(data, model);
      const double tq = student_t_quantile(
          1.0 - (1.0 - level) / 2.0,
          static_cast<double>(data.n()) - static_cast<double>(fit.rank));
      s.covered.assign(truth_terms.size(), 0);
      for (std::size_t t = 0; t < truth_terms.size(); ++t) {
        const int term = truth_terms[t];
        const auto pos =
            std::lower_bound(model.terms.begin(), model.terms.end(), term);
        if (pos == model.terms.end() || *pos != term) continue;
        const std::size_t idx = (model.intercept ? 1u : 0u) +
                                static_cast<std::size_t>(pos - model.terms.begin());
        const double se = std::sqrt(fit.sigma_hat2 * diag[idx]);
        const double target = dgp.beta[static_cast<std::size_t>(term)];
        if (std::abs(fit.coefficients[idx] - target) <= tq * se)
          s.covered[t] = 1;
      }
      s.ok = true;
    } catch (const Error& e) {
      s.error = e.what();
    }
  });

  FailureTally tally;
  std::vector<std::size_t> hits(truth_terms.size(), 0);
  std::size_t ok_count = 0;
  for (const auto& s : slots) {
    if (!s.ok) {
      ++tally.failures;
      if (tally.first_error.empty()) tally.first_error = s.error;
      continue;
    }
    ++ok_count;
    for (std::size_t t = 0; t < truth_terms.size(); ++t)
      hits[t] += s.covered[t];
  }
  enforce_failure_budget(tally, reps, "coverage study");

  CoverageReport out;
  out.level = level;
  out.reps = reps;
  out.failures = tally.failures;
  double total_hits = 0.0;
  for (std::size_t t = 0; t < truth_terms.size(); ++t) {
    const double rate =
        ok_count == 0 ? 0.0
                      : static_cast<double>(hits[t]) / static_cast<double>(ok_count);
    out.per_coefficient.emplace_back(
        "x" + std::to_string(truth_terms[t] + 1), rate);
    total_hits += rate;
  }
  out.overall = truth_terms.empty()
                    ? 0.0
                    : total_hits / static_cast<double>(truth_terms.size());
  return out;
}

RiskReport risk_comparison(const Dgp& dgp, std::size_t reps, double cutoff,
                           const IcConfig& cfg, std::uint64_t seed,
                           int workers) {
  if (reps == 0) throw ParamError("replication count must be positive");
  const Family family = dgp_family(dgp);

  struct Slot {
    bool ok = false;
    std::string error;
    double aic = 0.0, bic = 0.0, adaptive = 0.0;
  };
  std::vector<Slot> slots(reps);

  parallel_for(reps, workers, [&](std::size_t r) {
    Slot& s = slots[r];
    try {
      const Dataset data = generate_dataset(dgp, seed + r);
      const DualSelection dual = select_both(data, family);
      const PiReport pi = compute_pi(data, dual.bic, family, cfg, cutoff);
      const SelectionResult& chosen = pi.pi < cutoff ? dual.aic : dual.bic;
      s.aic = tse(*data.truth, dual.aic.fit);
      s.bic = tse(*data.truth, dual.bic.fit);
      s.adaptive = tse(*data.truth, chosen.fit);
      s.ok = true;
    } catch (const Error& e) {
      s.error = e.what();
    }
  });

  FailureTally tally;
  std::vector<double> aic, bic, adaptive;
  for (const auto& s : slots) {
    if (!s.ok) {
      ++tally.failures;
      if (tally.first_error.empty()) tally.first_error = s.error;
      continue;
    }
    aic.push_back(s.aic);
    bic.push_back(s.bic);
    adaptive.push_back(s.adaptive);
  }
  enforce_failure_budget(tally, reps, "risk comparison");

  RiskReport out;
  out.cutoff = cutoff;
  out.reps = reps;
  out.failures = tally.failures;
  out.aic = {mean(aic), mean_standard_error(aic)};
  out.bic = {mean(bic), mean_standard_error(bic)};
  out.adaptive = {mean(adaptive), mean_standard_error(adaptive)};
  return out;
}

}  // namespace pindex
