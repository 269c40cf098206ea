#include "pindex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pindex/errors.hpp"

namespace pindex {

namespace {

double squared_norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void check_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw DataError(std::string(what) + " contains a non-finite value");
    }
  }
}

// Pivoted Householder QR on a working copy of the columns. The response is
// transformed alongside. Returns everything needed to assemble a FitSummary.
struct QrResult {
  int rank = 0;
  std::vector<int> pivot;          // pivot[k] = original column index at step k
  std::vector<Vec> work;           // transformed columns (R in the top rows)
  Vec qty;                         // transformed response
  std::vector<Vec> reflectors;     // Householder vectors per step
  std::vector<double> col_scale;   // original column norms
};

QrResult pivoted_qr(const Vec& y, const std::vector<const Vec*>& columns) {
  const std::size_t n = y.size();
  const std::size_t m = columns.size();
  QrResult out;
  out.qty = y;
  out.work.resize(m);
  out.col_scale.assign(m, 0.0);
  out.pivot.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.work[j] = *columns[j];
    out.pivot[j] = static_cast<int>(j);
    const double norm = std::sqrt(squared_norm(out.work[j]));
    out.col_scale[j] = norm;
    if (norm > 0.0) {
      for (double& x : out.work[j]) x /= norm;
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  double largest = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    largest = std::max(largest, std::sqrt(squared_norm(out.work[j])));
  }
  const double threshold = static_cast<double>(std::max(n, m)) * eps * largest;

  const std::size_t steps = std::min(n, m);
  for (std::size_t k = 0; k < steps; ++k) {
    // Pivot: remaining column with the largest residual norm below row k.
    std::size_t best = k;
    double best_norm2 = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += out.work[j][i] * out.work[j][i];
      if (s > best_norm2) {
        best_norm2 = s;
        best = j;
      }
    }
    const double pivot_norm = std::sqrt(std::max(best_norm2, 0.0));
    if (pivot_norm < threshold || pivot_norm == 0.0) break;
    std::swap(out.work[k], out.work[best]);
    std::swap(out.pivot[k], out.pivot[best]);
    std::swap(out.col_scale[k], out.col_scale[best]);

    // Householder reflector for rows k..n-1 of column k.
    Vec& col = out.work[k];
    const double alpha = (col[k] >= 0.0) ? -pivot_norm : pivot_norm;
    Vec u(n - k);
    for (std::size_t i = k; i < n; ++i) u[i - k] = col[i];
    u[0] -= alpha;
    const double unorm2 = squared_norm(u);
    if (unorm2 > 0.0) {
      auto reflect = [&](Vec& v) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += u[i - k] * v[i];
        const double f = 2.0 * dot / unorm2;
        for (std::size_t i = k; i < n; ++i) v[i] -= f * u[i - k];
      };
      for (std::size_t j = k; j < m; ++j) reflect(out.work[j]);
      reflect(out.qty);
    }
    col[k] = alpha;
    for (std::size_t i = k + 1; i < n; ++i) col[i] = 0.0;
    out.reflectors.push_back(std::move(u));
    out.rank = static_cast<int>(k) + 1;
  }
  return out;
}

}  // namespace

FitSummary fit_columns(const Vec& y, const std::vector<const Vec*>& columns) {
  const std::size_t n = y.size();
  if (n == 0) throw DataError("fit: empty response");
  check_finite(y, "response");
  for (const Vec* c : columns) {
    if (c->size() != n) throw DataError("fit: column length differs from response length");
    check_finite(*c, "design column");
  }

  FitSummary fit;
  fit.coefficients.assign(columns.size(), 0.0);
  if (columns.empty()) {
    fit.rss = squared_norm(y);
    fit.rank = 0;
    fit.fitted.assign(n, 0.0);
    fit.sigma_hat2 = (n > 0) ? fit.rss / static_cast<double>(n) : 0.0;
    return fit;
  }

  QrResult qr = pivoted_qr(y, columns);
  const int r = qr.rank;
  fit.rank = r;

  // rss is the squared tail of the transformed response.
  double rss = 0.0;
  for (std::size_t i = static_cast<std::size_t>(r); i < n; ++i) {
    rss += qr.qty[i] * qr.qty[i];
  }
  fit.rss = rss;
  fit.sigma_hat2 =
      (static_cast<std::size_t>(r) < n) ? rss / static_cast<double>(n - r) : 0.0;

  // Fitted values: apply the reflectors in reverse to (head of qty, 0,...,0).
  Vec fitted(n, 0.0);
  for (int i = 0; i < r; ++i) fitted[i] = qr.qty[i];
  for (int k = r - 1; k >= 0; --k) {
    const Vec& u = qr.reflectors[k];
    const double unorm2 = squared_norm(u);
    if (unorm2 == 0.0) continue;
    double dot = 0.0;
    for (std::size_t i = k; i < n; ++i) dot += u[i - k] * fitted[i];
    const double f = 2.0 * dot / unorm2;
    for (std::size_t i = k; i < n; ++i) fitted[i] -= f * u[i - k];
  }
  fit.fitted = std::move(fitted);

  // Basic solution: back substitution on the leading r x r triangle, zeros
  // for unpivoted columns, unscaled back to the original column units.
  Vec beta(static_cast<std::size_t>(r), 0.0);
  for (int i = r - 1; i >= 0; --i) {
    double s = qr.qty[i];
    for (int j = i + 1; j < r; ++j) s -= qr.work[j][i] * beta[j];
    beta[i] = s / qr.work[i][i];
  }
  for (int i = 0; i < r; ++i) {
    const int col = qr.pivot[i];
    const double scale = qr.col_scale[i];
    fit.coefficients[col] = (scale > 0.0) ? beta[i] / scale : 0.0;
  }
  return fit;
}

namespace {

std::vector<const Vec*> model_columns(const Dataset& dataset, const ModelSpec& model,
                                      Vec& ones_storage) {
  std::vector<const Vec*> cols;
  cols.reserve(model.terms.size() + 1);
  if (model.intercept) {
    ones_storage.assign(dataset.n(), 1.0);
    cols.push_back(&ones_storage);
  }
  for (int t : model.terms) {
    if (t < 0 || static_cast<std::size_t>(t) >= dataset.design.term_count()) {
      throw DataError("model refers to a column outside the design");
    }
    cols.push_back(&dataset.design.columns[static_cast<std::size_t>(t)]);
  }
  return cols;
}

}  // namespace

FitSummary least_squares_fit(const Dataset& dataset, const ModelSpec& model) {
  if (dataset.design.n != 0 && dataset.design.n != dataset.n()) {
    throw DataError("design row count differs from response length");
  }
  Vec ones;
  const auto cols = model_columns(dataset, model, ones);
  return fit_columns(dataset.y, cols);
}

double oracle_residual_norm(const Vec& truth, const ModelSpec& model,
                            const Dataset& dataset) {
  if (truth.size() != dataset.n()) {
    throw DataError("truth length differs from dataset length");
  }
  Vec ones;
  const auto cols = model_columns(dataset, model, ones);
  return fit_columns(truth, cols).rss;
}

double tse(const Vec& truth, const FitSummary& fit) {
  if (truth.size() != fit.fitted.size()) {
    throw DataError("truth length differs from fitted length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - fit.fitted[i];
    s += d * d;
  }
  return s;
}

Vec inverse_gram_diagonal(const Vec& y, const std::vector<const Vec*>& columns) {
  QrResult qr = pivoted_qr(y, columns);
  const int r = qr.rank;
  const int m = static_cast<int>(columns.size());
  if (r < m) {
    throw DiagnosticError("inverse_gram_diagonal: columns are rank deficient");
  }
  // Invert the scaled R, then undo pivoting and column scaling. Row norms of
  // R^{-1} give the diagonal of (X'X)^{-1} for the scaled columns.
  std::vector<Vec> rinv(static_cast<std::size_t>(r), Vec(static_cast<std::size_t>(r), 0.0));
  for (int c = 0; c < r; ++c) {
    Vec e(static_cast<std::size_t>(r), 0.0);
    e[static_cast<std::size_t>(c)] = 1.0;
    for (int i = c; i >= 0; --i) {
      double s = e[static_cast<std::size_t>(i)];
      for (int j = i + 1; j <= c; ++j) {
        s -= qr.work[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
             rinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      }
      rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
          s / qr.work[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
  }
  Vec diag(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < r; ++i) {
    double s = 0.0;
    for (int j = i; j < r; ++j) {
      s += rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
           rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const double scale = qr.col_scale[static_cast<std::size_t>(i)];
    diag[static_cast<std::size_t>(qr.pivot[static_cast<std::size_t>(i)])] =
        (scale > 0.0) ? s / (scale * scale) : 0.0;
  }
  return diag;
}

Vec model_inverse_gram_diagonal(const Dataset& dataset, const ModelSpec& model) {
  Vec ones;
  const auto cols = model_columns(dataset, model, ones);
  return inverse_gram_diagonal(dataset.y, cols);
}

IncrementalQr::IncrementalQr(const Vec& y) : n_(y.size()), y_(y), y_res_(y) {
  rss_ = squared_norm(y_res_);
}

bool IncrementalQr::push(const Vec& column) {
  if (column.size() != n_) throw DataError("push: column length mismatch");
  Level level;
  level.y_res_before = y_res_;
  level.rss_before = rss_;

  const double col_norm = std::sqrt(squared_norm(column));
  Vec v = column;
  std::vector<double> rcol(basis_.size() + 1, 0.0);
  // Two Gram-Schmidt passes keep orthogonality at working precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      double h = 0.0;
      for (std::size_t row = 0; row < n_; ++row) h += basis_[i][row] * v[row];
      rcol[i] += h;
      for (std::size_t row = 0; row < n_; ++row) v[row] -= h * basis_[i][row];
    }
  }
  const double res_norm = std::sqrt(squared_norm(v));
  const bool accepted = col_norm > 0.0 && res_norm > 1e-8 * col_norm;
  level.accepted = accepted;
  levels_.push_back(std::move(level));
  if (!accepted) {
    ++rejected_;
    return false;
  }
  rcol.back() = res_norm;
  for (double& x : v) x /= res_norm;
  double z = 0.0;
  for (std::size_t row = 0; row < n_; ++row) z += v[row] * y_res_[row];
  for (std::size_t row = 0; row < n_; ++row) y_res_[row] -= z * v[row];
  rss_ = squared_norm(y_res_);
  basis_.push_back(std::move(v));
  rcols_.push_back(std::move(rcol));
  z_.push_back(z);
  return true;
}

void IncrementalQr::pop() {
  if (levels_.empty()) throw DiagnosticError("pop: empty stack");
  const Level& level = levels_.back();
  if (level.accepted) {
    basis_.pop_back();
    rcols_.pop_back();
    z_.pop_back();
  } else {
    --rejected_;
  }
  y_res_ = level.y_res_before;
  rss_ = level.rss_before;
  levels_.pop_back();
}

std::vector<double> IncrementalQr::drop_one_rss_increase() const {
  if (!all_independent()) {
    throw DiagnosticError("drop_one_rss_increase: stack has dependent columns");
  }
  const int k = rank();
  std::vector<double> beta(static_cast<std::size_t>(k), 0.0);
  for (int i = k - 1; i >= 0; --i) {
    double s = z_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      s -= rcols_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
           beta[static_cast<std::size_t>(j)];
    }
    beta[static_cast<std::size_t>(i)] =
        s / rcols_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  // Row squared norms of R^{-1} give the diagonal of (X'X)^{-1}.
  std::vector<Vec> rinv(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(k), 0.0));
  for (int c = 0; c < k; ++c) {
    Vec e(static_cast<std::size_t>(k), 0.0);
    e[static_cast<std::size_t>(c)] = 1.0;
    for (int i = c; i >= 0; --i) {
      double s = e[static_cast<std::size_t>(i)];
      for (int j = i + 1; j <= c; ++j) {
        s -= rcols_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
             rinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      }
      rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
          s / rcols_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
  }
  std::vector<double> delta(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    double w = 0.0;
    for (int j = i; j < k; ++j) {
      w += rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
           rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const double b = beta[static_cast<std::size_t>(i)];
    delta[static_cast<std::size_t>(i)] = (w > 0.0) ? b * b / w : 0.0;
  }
  return delta;
}

}  // namespace pindex
