#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pindex {

using Vec = std::vector<double>;

// Column-oriented design matrix. Columns are stored separately because model
// candidates are column subsets; labels identify terms in reports.
struct DesignMatrix {
  std::size_t n = 0;
  std::vector<Vec> columns;
  std::vector<std::string> labels;

  std::size_t term_count() const { return columns.size(); }
};

// A regression dataset. `truth` and `sigma` are only present for simulated
// data and feed oracle diagnostics; they never influence fitting.
struct Dataset {
  Vec y;
  DesignMatrix design;
  std::optional<Vec> truth;
  std::optional<double> sigma;

  std::size_t n() const { return y.size(); }
};

enum class FamilyKind { nested_order, all_subset };
enum class InterceptPolicy { always, selectable };

// One candidate model: a sorted set of design-column indices plus an
// intercept flag. `rank` is the realized rank of the fitted column set and is
// negative until a fit has been computed.
struct ModelSpec {
  std::vector<int> terms;
  bool intercept = true;
  int rank = -1;
};

inline bool same_model(const ModelSpec& a, const ModelSpec& b) {
  return a.intercept == b.intercept && a.terms == b.terms;
}

// Least-squares output for one model.
struct FitSummary {
  double rss = 0.0;
  int rank = 0;
  // Basic solution on the pivoted columns: intercept coefficient first when
  // the model has one, then term coefficients in model order. Columns not
  // used by the rank-revealing factorization get coefficient 0.
  Vec coefficients;
  Vec fitted;
  double sigma_hat2 = 0.0;
};

enum class SigmaMode { known, estimated };

// Parameters of the index's information criterion.
struct IcConfig {
  double lambda = 1.0;
  double d = 0.0;
  SigmaMode sigma_mode = SigmaMode::estimated;
  double sigma2 = 0.0;  // used only in known mode
};

struct FamilyConfig {
  FamilyKind kind = FamilyKind::all_subset;
  int max_order = 1;        // nested_order only
  int predictor_count = 1;  // all_subset only
  InterceptPolicy intercept_policy = InterceptPolicy::always;
};

enum class Criterion { aic, bic };

struct SelectionResult {
  ModelSpec model;
  FitSummary fit;
  double score = 0.0;
  Criterion criterion = Criterion::bic;
};

enum class Classification { practically_parametric, practically_nonparametric };

struct PiReport {
  double pi = 0.0;
  bool sentinel = false;  // true when rank-1 selection forces pi = n
  ModelSpec selected;
  double ic_selected = 0.0;
  std::vector<std::pair<ModelSpec, double>> submodel_ics;
  std::optional<ModelSpec> argmin_submodel;
  SigmaMode sigma_mode = SigmaMode::estimated;
  double sigma2_ref = 0.0;
  bool degenerate = false;  // known-sigma mode with ic_selected <= 0
  Classification classification = Classification::practically_nonparametric;
  double cutoff_used = 0.0;
};

}  // namespace pindex
