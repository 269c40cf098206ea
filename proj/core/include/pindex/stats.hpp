#pragma once

#include <map>
#include <string>
#include <vector>

#include "pindex/types.hpp"

namespace pindex {

// Nearest-rank (type 1) percentile: the smallest element whose rank is at
// least ceil(p/100 * N). p in (0, 100].
double percentile(std::vector<double> values, double p);

// Convenience: the percentiles used by study summaries, keyed "p10".."p90".
std::map<std::string, double> summary_percentiles(const std::vector<double>& values);

double mean(const std::vector<double>& values);
// Standard error of the mean (sample standard deviation / sqrt(N)).
double mean_standard_error(const std::vector<double>& values);

// Student-t quantile via the regularized incomplete beta function; used for
// post-selection confidence intervals.
double student_t_quantile(double p, double dof);

// Regularized incomplete beta I_x(a, b); exposed for tests.
double incomplete_beta(double a, double b, double x);

// Symmetric square root of a correlation matrix via Jacobi eigendecomposition.
// `corr` is row-major p x p; must be symmetric positive definite.
std::vector<Vec> correlation_sqrt(const std::vector<Vec>& corr);

}  // namespace pindex
