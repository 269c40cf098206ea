#include "pindex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "pindex/errors.hpp"

namespace pindex {

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw ParamError("percentile: empty sample");
  if (!(p > 0.0 && p <= 100.0)) throw ParamError("percentile: p outside (0,100]");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
  if (rank == 0) rank = 1;
  if (rank > n) rank = n;
  return values[rank - 1];
}

std::map<std::string, double> summary_percentiles(const std::vector<double>& values) {
  static const int levels[] = {10, 20, 25, 50, 75, 80, 90};
  std::map<std::string, double> out;
  for (int lv : levels) {
    out["p" + std::to_string(lv)] = percentile(values, static_cast<double>(lv));
  }
  return out;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw ParamError("mean: empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double mean_standard_error(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

namespace {

// Continued fraction for the incomplete beta function, modified Lentz scheme.
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-15;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ParamError("incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                          (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) -
                        (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b))) *
                   beta_cf(b, a, 1.0 - x) / b;
}

namespace {

double student_t_cdf(double t, double dof) {
  if (t == 0.0) return 0.5;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * incomplete_beta(dof / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

}  // namespace

double student_t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) throw ParamError("student_t_quantile: p outside (0,1)");
  if (!(dof > 0.0)) throw ParamError("student_t_quantile: dof must be positive");
  if (p == 0.5) return 0.0;
  const bool upper = p > 0.5;
  const double target = upper ? p : 1.0 - p;
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, dof) < target && hi < 1e12) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, dof) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13 * (1.0 + hi)) break;
  }
  const double t = 0.5 * (lo + hi);
  return upper ? t : -t;
}

std::vector<Vec> correlation_sqrt(const std::vector<Vec>& corr) {
  const std::size_t p = corr.size();
  for (const auto& row : corr) {
    if (row.size() != p) throw ParamError("correlation_sqrt: matrix not square");
  }
  // Cyclic Jacobi eigendecomposition; A is overwritten with the diagonal.
  std::vector<Vec> a = corr;
  std::vector<Vec> v(p, Vec(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (std::size_t i = 0; i + 1 < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        if (std::fabs(a[i][j]) < 1e-300) continue;
        const double theta = (a[j][j] - a[i][i]) / (2.0 * a[i][j]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double aik = a[i][k], ajk = a[j][k];
          a[i][k] = c * aik - s * ajk;
          a[j][k] = s * aik + c * ajk;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double aki = a[k][i], akj = a[k][j];
          a[k][i] = c * aki - s * akj;
          a[k][j] = s * aki + c * akj;
          const double vki = v[k][i], vkj = v[k][j];
          v[k][i] = c * vki - s * vkj;
          v[k][j] = s * vki + c * vkj;
        }
      }
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (a[i][i] <= 0.0) {
      throw ParamError("correlation_sqrt: matrix is not positive definite");
    }
  }
  // S = V diag(sqrt(lambda)) V'
  std::vector<Vec> s(p, Vec(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        acc += v[i][k] * std::sqrt(a[k][k]) * v[j][k];
      }
      s[i][j] = acc;
    }
  }
  return s;
}

}  // namespace pindex
