#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pindex/model_space.hpp"
#include "pindex/pi.hpp"
#include "pindex/types.hpp"

namespace pindex {

// A data-generating process. Nested-order processes draw a single standard
// normal predictor and build the mean as a polynomial plus an optional
// sin(2*pi*x) term; all-subset processes draw correlated standard normal
// predictors with mean beta'x, optionally plus a smooth component in an
// independent uniform variable u whose powers join the candidate terms.
struct Dgp {
  std::string name = "custom";
  std::size_t n = 200;
  double sigma = 1.0;
  FamilyKind family_kind = FamilyKind::all_subset;

  // nested_order
  int max_order = 30;
  Vec poly_coef;        // mean += sum_j poly_coef[j] * x^j
  double sin_amp = 0.0; // mean += sin_amp * sin(2*pi*x)

  // all_subset
  Vec beta;
  double rho = 0.5;
  bool equicorrelated = false; // false: corr(x_i,x_j) = rho^{|i-j|}
  bool nonlinear_u = false;    // mean += phi(u); candidates gain u^1..u^8
};

std::vector<std::string> preset_names();
Dgp dgp_preset(const std::string& name);

Family dgp_family(const Dgp& dgp);

// Indices of the nonzero mean coefficients (all-subset processes).
std::vector<int> true_term_indices(const Dgp& dgp);

// Deterministic function of (dgp, seed); truth and sigma attached.
Dataset generate_dataset(const Dgp& dgp, std::uint64_t seed);

enum class Method { bic, aic, adaptive };

struct RepRecord {
  std::size_t rep = 0;
  bool ok = false;
  std::string error;
  std::string model_label;
  int model_size = 0;  // polynomial order, or number of subset terms
  int rank = 0;
  double pi = 0.0;
  bool pi_sentinel = false;
  double sigma_hat = 0.0;
  double tse = 0.0;
  std::string classification;
};

struct SimSummary {
  std::string dgp_name;
  std::string method;
  std::size_t reps = 0;
  std::uint64_t base_seed = 0;
  double cutoff = 0.0;
  std::vector<RepRecord> records;
  std::map<std::string, double> pi_percentiles;
  std::map<std::string, double> size_percentiles;
  std::map<std::string, double> sigma_percentiles;
  // label -> share of successful replications, most frequent first.
  std::vector<std::pair<std::string, double>> selection_frequency;
  double mean_tse = 0.0;
  double tse_standard_error = 0.0;
  std::size_t failures = 0;
};

// Replication study: per replication r, generates data with seed
// base_seed + r, selects (AIC and BIC), computes the index from the BIC
// selection, and records the method's model, its rank, sigma-hat and total
// square error. More than 5% failed replications aborts the study.
SimSummary run_replications(const Dgp& dgp, std::size_t reps, Method method,
                            const IcConfig& cfg, double cutoff,
                            std::uint64_t base_seed, int workers);

struct BootstrapReport {
  std::size_t resamples = 0;
  double reselect_frequency = 0.0;
  std::vector<std::pair<std::string, double>> frequency_table;
  std::map<std::string, double> pi_percentiles;
  std::size_t failures = 0;
};

// Parametric bootstrap from a selected fit: resample r draws
// y* = fitted + sigma_hat * eps(seed + r) on the original design, reruns
// selection and the index, and reports how often the original model wins.
BootstrapReport parametric_bootstrap(const Dataset& dataset,
                                     const SelectionResult& selected,
                                     const Family& family, const IcConfig& cfg,
                                     double cutoff, std::size_t b,
                                     std::uint64_t seed, int workers);

struct SubsampleCurve {
  std::size_t size = 0;
  std::map<std::string, double> pi_percentiles;
};

struct SubsampleReport {
  std::vector<SubsampleCurve> curves;
  bool duplicates_removed = false;
  std::size_t reps = 0;
  std::size_t failures = 0;
};

// Without-replacement subsamples at each requested size; selection and the
// index rerun per subsample. Sizes are deduplicated (flagged) and must be
// below the dataset size.
SubsampleReport subsample_study(const Dataset& dataset,
                                std::vector<std::size_t> sizes, std::size_t reps,
                                std::uint64_t seed, const Family& family,
                                const IcConfig& cfg, double cutoff, int workers);

struct CoverageReport {
  double overall = 0.0;
  std::vector<std::pair<std::string, double>> per_coefficient;
  double level = 0.0;
  std::size_t reps = 0;
  std::size_t failures = 0;
};

// Naive post-selection t-intervals: select by BIC, build level-confidence
// intervals from the selected model as if it were fixed in advance, and
// record coverage of each truly nonzero coefficient (an excluded coefficient
// counts as missed). oracle_fit forces the true model instead of selecting,
// which restores nominal coverage.
CoverageReport coverage_study(const Dgp& dgp, double level, std::size_t reps,
                              const IcConfig& cfg, std::uint64_t seed,
                              int workers, bool oracle_fit = false);

struct RiskSummary {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct RiskReport {
  RiskSummary aic;
  RiskSummary bic;
  RiskSummary adaptive;
  double cutoff = 0.0;
  std::size_t reps = 0;
  std::size_t failures = 0;
};

// Mean total square error of AIC selection, BIC selection, and the adaptive
// switch, on identical datasets.
RiskReport risk_comparison(const Dgp& dgp, std::size_t reps, double cutoff,
                           const IcConfig& cfg, std::uint64_t seed, int workers);

}  // namespace pindex
