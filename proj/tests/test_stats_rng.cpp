#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pindex/errors.hpp"
#include "pindex/rng.hpp"
#include "pindex/stats.hpp"

using namespace pindex;

TEST_SUITE("stats_rng") {

TEST_CASE("nearest-rank percentiles") {
  std::vector<double> v = {7, 3, 10, 1, 9, 2, 8, 5, 4, 6};  // 1..10 shuffled
  CHECK(percentile(v, 50) == 5.0);
  CHECK(percentile(v, 10) == 1.0);
  CHECK(percentile(v, 25) == 3.0);
  CHECK(percentile(v, 75) == 8.0);
  CHECK(percentile(v, 90) == 9.0);
  CHECK(percentile(v, 100) == 10.0);
  CHECK(percentile(v, 0.1) == 1.0);
  CHECK(percentile({42.0}, 50) == 42.0);
  CHECK(percentile({42.0}, 100) == 42.0);
  CHECK_THROWS_AS(percentile({}, 50), ParamError);
  CHECK_THROWS_AS(percentile(v, 0.0), ParamError);
  CHECK_THROWS_AS(percentile(v, 101.0), ParamError);
}

TEST_CASE("summary percentile table") {
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  const auto table = summary_percentiles(v);
  const std::vector<std::string> keys = {"p10", "p20", "p25", "p50",
                                         "p75", "p80", "p90"};
  REQUIRE(table.size() == keys.size());
  for (const auto& k : keys) REQUIRE(table.count(k) == 1);
  CHECK(table.at("p10") == 10.0);
  CHECK(table.at("p25") == 25.0);
  CHECK(table.at("p50") == 50.0);
  CHECK(table.at("p80") == 80.0);
  CHECK(table.at("p90") == 90.0);
}

TEST_CASE("mean and its standard error") {
  const std::vector<double> v = {2.0, 4.0, 6.0};
  CHECK(mean(v) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(mean_standard_error(v) ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(mean_standard_error({5.0}) == 0.0);
  CHECK_THROWS_AS(mean({}), ParamError);
}

TEST_CASE("regularized incomplete beta against closed forms") {
  // I_x(1/2,1/2) = (2/pi) asin(sqrt(x)); I_x(1,1) = x; the rest are
  // polynomial identities with exact decimal values
  CHECK(incomplete_beta(0.5, 0.5, 0.25) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(incomplete_beta(2.0, 3.0, 0.5) == doctest::Approx(0.6875).epsilon(1e-13));
  CHECK(incomplete_beta(5.0, 2.0, 0.8) == doctest::Approx(0.65536).epsilon(1e-13));
  CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-13));
  CHECK(incomplete_beta(100.0, 0.5, 0.99) ==
        doctest::Approx(0.1567758654244408).epsilon(1e-10));
  CHECK(incomplete_beta(0.5, 100.0, 0.01) ==
        doctest::Approx(0.843224134575559).epsilon(1e-10));
  CHECK(incomplete_beta(95.0, 0.5, 0.9797) ==
        doctest::Approx(0.048676830413425486).epsilon(1e-10));
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK(incomplete_beta(2.0, 3.0, -0.5) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 0.5) + incomplete_beta(3.0, 2.0, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), ParamError);
  CHECK_THROWS_AS(incomplete_beta(1.0, -1.0, 0.5), ParamError);
}

TEST_CASE("student-t quantiles") {
  CHECK(student_t_quantile(0.975, 10) ==
        doctest::Approx(2.2281388519649385).epsilon(1e-9));
  CHECK(student_t_quantile(0.975, 190) ==
        doctest::Approx(1.9725281819983447).epsilon(1e-9));
  CHECK(student_t_quantile(0.975, 193) ==
        doctest::Approx(1.9723316757930007).epsilon(1e-9));
  CHECK(student_t_quantile(0.995, 5) ==
        doctest::Approx(4.032142983557536).epsilon(1e-9));
  CHECK(student_t_quantile(0.9, 30) ==
        doctest::Approx(1.310415025391396).epsilon(1e-9));
  CHECK(student_t_quantile(0.975, 196) ==
        doctest::Approx(1.9721412216594967).epsilon(1e-9));
  CHECK(student_t_quantile(0.5, 7) == 0.0);
  CHECK(student_t_quantile(0.025, 10) ==
        doctest::Approx(-student_t_quantile(0.975, 10)).epsilon(1e-12));
  CHECK_THROWS_AS(student_t_quantile(0.0, 10), ParamError);
  CHECK_THROWS_AS(student_t_quantile(1.0, 10), ParamError);
  CHECK_THROWS_AS(student_t_quantile(0.975, 0.0), ParamError);
}

TEST_CASE("normal quantiles") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.025) ==
        doctest::Approx(-1.9599639845400545).epsilon(1e-12));
  CHECK(normal_quantile(0.3) ==
        doctest::Approx(-0.5244005127080409).epsilon(1e-12));
  CHECK(normal_quantile(1e-10) ==
        doctest::Approx(-6.361340902404056).epsilon(1e-9));
  CHECK(normal_quantile(0.9999999) ==
        doctest::Approx(5.199337582290661).epsilon(1e-9));
}

TEST_CASE("correlation matrix square root") {
  const std::vector<Vec> eye = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto s_eye = correlation_sqrt(eye);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(s_eye[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));

  const std::size_t p = 4;
  std::vector<Vec> corr(p, Vec(p, 0.6));
  for (std::size_t i = 0; i < p; ++i) corr[i][i] = 1.0;
  const auto s = correlation_sqrt(corr);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      CHECK(s[i][j] == doctest::Approx(s[j][i]).epsilon(1e-12));
      double dot = 0.0;
      for (std::size_t k = 0; k < p; ++k) dot += s[i][k] * s[k][j];
      CHECK(dot == doctest::Approx(corr[i][j]).epsilon(1e-12));
    }
  }

  const std::vector<Vec> indefinite = {{1.0, 2.0}, {2.0, 1.0}};
  CHECK_THROWS_AS(correlation_sqrt(indefinite), ParamError);
  const std::vector<Vec> ragged = {{1.0, 0.0}, {0.0}};
  CHECK_THROWS_AS(correlation_sqrt(ragged), ParamError);
}

TEST_CASE("seed scrambling") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(replication_seed(1000, 7) == splitmix64(1007));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i)
    seeds.push_back(replication_seed(99, i));
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("random stream is pinned to the scrambled mersenne engine") {
  Rng r(7);
  std::mt19937_64 engine(splitmix64(7));
  CHECK(r.next_u64() == engine());
  const double u = Rng(7).uniform();
  std::mt19937_64 e2(splitmix64(7));
  CHECK(u == static_cast<double>(e2() >> 11) * 0x1.0p-53);
}

TEST_CASE("generator determinism and basic moments") {
  Rng a(123), b(123), c(124);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 200; ++i) {
    const double va = a.normal(), vb = b.normal(), vc = c.normal();
    all_equal = all_equal && (va == vb);
    any_diff = any_diff || (va != vc);
  }
  CHECK(all_equal);
  CHECK(any_diff);

  Rng r(2024);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sumsq += z * z;
  }
  const double m = sum / n;
  CHECK(std::fabs(m) < 0.01);
  CHECK(std::fabs(sumsq / n - m * m - 1.0) < 0.02);

  Rng u(9);
  double usum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double v = u.uniform();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    usum += v;
  }
  CHECK(std::fabs(usum / 20000 - 0.5) < 0.01);

  Rng w(10);
  for (int i = 0; i < 2000; ++i) {
    const double v = w.uniform(-4.0, 4.0);
    REQUIRE(v > -4.0);
    REQUIRE(v < 4.0);
  }
}

TEST_CASE("normal sampler matches the quantile transform") {
  Rng r(55);
  std::mt19937_64 engine(splitmix64(55));
  for (int i = 0; i < 50; ++i) {
    const double z = r.normal();
    double u;
    do {
      u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    CHECK(z == normal_quantile(u));
  }
}

}  // TEST_SUITE
