#pragma once

#include <cstddef>
#include <vector>

#include "pindex/types.hpp"

namespace pindex {

// Least squares via rank-revealing pivoted Householder QR. Columns are
// scaled to unit norm before factorization and the pivot threshold is
// n_cols * machine-epsilon * (largest scaled column norm), so ranks are
// detected reliably even for raw monomial designs of high order. Normal
// equations are never formed.
FitSummary least_squares_fit(const Dataset& dataset, const ModelSpec& model);

// Workhorse on explicit columns; `columns` may be empty (rank-0 fit with
// rss = |y|^2).
FitSummary fit_columns(const Vec& y, const std::vector<const Vec*>& columns);

// Squared norm of truth minus its projection onto the model's column span.
double oracle_residual_norm(const Vec& truth, const ModelSpec& model,
                            const Dataset& dataset);

// Total square error |truth - fitted|^2 of a fit.
double tse(const Vec& truth, const FitSummary& fit);

// Diagonal of (X'X)^{-1} for the fitted columns, in the same order as
// FitSummary::coefficients. Requires the fit to be full rank; used for
// post-selection t-intervals. Throws DiagnosticError on rank deficiency.
Vec inverse_gram_diagonal(const Vec& y, const std::vector<const Vec*>& columns);

// Same, resolving a model against a dataset (intercept column first when the
// model carries one).
Vec model_inverse_gram_diagonal(const Dataset& dataset, const ModelSpec& model);

// Incremental orthogonalization stack for subset search. Columns are pushed
// and popped in LIFO order; the current residual sum of squares of y against
// the span of accepted columns is maintained throughout. Modified
// Gram-Schmidt with one reorthogonalization pass keeps the basis orthonormal
// to working precision; each level snapshots the y-residual so pops restore
// the exact previous state.
class IncrementalQr {
 public:
  explicit IncrementalQr(const Vec& y);

  // Pushes a column; returns true if it extended the basis (was numerically
  // independent of the columns already in).
  bool push(const Vec& column);
  void pop();

  double rss() const { return rss_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  std::size_t depth() const { return levels_.size(); }
  // True when every pushed column was accepted.
  bool all_independent() const { return rejected_ == 0; }

  // For each accepted column (in push order), the increase in rss that
  // dropping that single column from the current set would cause. Only valid
  // when all_independent(); computed from the triangular factor.
  std::vector<double> drop_one_rss_increase() const;

 private:
  std::size_t n_;
  Vec y_;
  Vec y_res_;
  double rss_ = 0.0;
  std::vector<Vec> basis_;                // orthonormal columns
  std::vector<std::vector<double>> rcols_;  // R columns for accepted pushes
  std::vector<double> z_;                 // basis projections of y
  struct Level {
    bool accepted;
    Vec y_res_before;
    double rss_before;
  };
  std::vector<Level> levels_;
  int rejected_ = 0;
};

}  // namespace pindex
