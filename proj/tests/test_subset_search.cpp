#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "helpers.hpp"
#include "pindex/criteria.hpp"
#include "pindex/errors.hpp"
#include "pindex/linalg.hpp"
#include "pindex/subset_search.hpp"

using namespace pindex;

TEST_SUITE("subset_search") {

TEST_CASE("orthogonal design: champions are the largest projections") {
  // sign columns mutually orthogonal and orthogonal to the intercept
  const Vec c0 = {1, -1, 1, -1, 1, -1, 1, -1};
  const Vec c1 = {1, 1, -1, -1, 1, 1, -1, -1};
  const Vec c2 = {1, 1, 1, 1, -1, -1, -1, -1};
  Vec y(8);
  for (int i = 0; i < 8; ++i)
    y[i] = 1.0 + 5.0 * c0[i] + 3.0 * c1[i] + 1.0 * c2[i];
  y[0] += 0.25;  // break the perfect fit
  const Dataset d = testutil::sign_design(y, {c0, c1, c2});

  const auto best = best_rss_per_size(d, 3);
  REQUIRE(best.size() == 3);
  CHECK(best.at(1).model.terms == std::vector<int>{0});
  CHECK(best.at(2).model.terms == std::vector<int>{0, 1});
  CHECK(best.at(3).model.terms == std::vector<int>{0, 1, 2});
  CHECK(best.at(1).rss > best.at(2).rss);
  CHECK(best.at(2).rss > best.at(3).rss);
}

TEST_CASE("branch and bound equals exhaustive enumeration") {
  for (std::uint64_t seed = 200; seed < 212; ++seed) {
    const std::size_t p = 10 + seed % 3;
    const Dataset d = testutil::random_dataset(seed, 60, p, 2.0);
    SearchStats stats;
    const auto fast = best_rss_per_size(d, static_cast<int>(p), &stats);
    const auto slow = best_rss_per_size_exhaustive(d, static_cast<int>(p));
    REQUIRE(fast.size() == slow.size());
    for (const auto& [size, champ] : slow) {
      REQUIRE(fast.count(size) == 1);
      CHECK(fast.at(size).model.terms == champ.model.terms);
      // canonical refits must agree to the last bit
      CHECK(fast.at(size).rss == champ.rss);
    }
    CHECK(stats.nodes <= (1ULL << p) - 1ULL);
  }
}

TEST_CASE("pruning happens on signal-bearing data") {
  const Dataset d = testutil::random_dataset(300, 80, 12, 1.0);
  SearchStats stats;
  best_rss_per_size(d, 12, &stats);
  CHECK(stats.pruned > 0);
  CHECK(stats.nodes < (1ULL << 12) - 1ULL);
}

TEST_CASE("duplicate columns: dependent-design path still matches exhaustive") {
  Dataset d = testutil::random_dataset(310, 50, 5, 1.5);
  d.design.columns.push_back(d.design.columns[2]);
  d.design.labels.push_back("dup");
  const auto fast = best_rss_per_size(d, 6);
  const auto slow = best_rss_per_size_exhaustive(d, 6);
  REQUIRE(fast.size() == slow.size());
  for (const auto& [size, champ] : slow) {
    CHECK(fast.at(size).model.terms == champ.model.terms);
    CHECK(fast.at(size).rss == champ.rss);
  }
}

TEST_CASE("champions carry canonical ranks") {
  const Dataset d = testutil::random_dataset(320, 60, 6);
  const auto best = best_rss_per_size(d, 6);
  for (const auto& [size, champ] : best) {
    CHECK(champ.model.rank == size + 1);  // full-rank data: terms + intercept
    CHECK(champ.model.intercept);
  }
}

TEST_CASE("select_best nested equals a direct order scan") {
  Rng rng(42);
  const std::size_t n = 120;
  Vec x(n);
  for (auto& v : x) v = rng.normal();
  Dataset raw;
  raw.y.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    raw.y[i] = 1.0 - 2.0 * x[i] + 0.5 * x[i] * x[i] + rng.normal();
  raw.design.n = n;
  raw.design.columns = {x};
  raw.design.labels = {"x"};
  const Dataset d = expand_nested_dataset(raw, 8);
  FamilyConfig fc;
  fc.kind = FamilyKind::nested_order;
  fc.max_order = 8;
  const Family f(fc);

  const SelectionResult sel = select_best(d, f, Criterion::bic);

  bool found = false;
  ModelSpec best_model;
  double best_score = 0.0;
  for (int order = 1; order <= 8; ++order) {
    ModelSpec m = f.model_for_order(order);
    const FitSummary fit = least_squares_fit(d, m);
    m.rank = fit.rank;
    const double score = bic_score(fit, d.n());
    if (!found || selection_preferred(score, m, best_score, best_model)) {
      found = true;
      best_model = m;
      best_score = score;
    }
  }
  CHECK(same_model(sel.model, best_model));
  CHECK(sel.score == doctest::Approx(best_score).epsilon(1e-12));
}

TEST_CASE("select_both matches the two single selections") {
  const Dataset d = testutil::random_dataset(51, 70, 8, 2.0);
  FamilyConfig fc;
  fc.kind = FamilyKind::all_subset;
  fc.predictor_count = 8;
  const Family f(fc);
  const DualSelection both = select_both(d, f);
  const SelectionResult aic = select_best(d, f, Criterion::aic);
  const SelectionResult bic = select_best(d, f, Criterion::bic);
  CHECK(same_model(both.aic.model, aic.model));
  CHECK(same_model(both.bic.model, bic.model));
  CHECK(both.aic.score == aic.score);
  CHECK(both.bic.score == bic.score);
  CHECK(both.aic.criterion == Criterion::aic);
  CHECK(both.bic.criterion == Criterion::bic);
}

TEST_CASE("single-predictor edge case") {
  const Dataset d = testutil::random_dataset(61, 30, 1);
  const auto best = best_rss_per_size(d, 1);
  REQUIRE(best.size() == 1);
  CHECK(best.at(1).model.terms == std::vector<int>{0});
}

TEST_CASE("validation") {
  const Dataset d = testutil::random_dataset(71, 30, 3);
  CHECK_THROWS_AS(best_rss_per_size(d, 0), ParamError);
  CHECK_THROWS_AS(best_rss_per_size(d, 4), ParamError);
  CHECK_THROWS_AS(best_rss_per_size(d, 61), ParamError);
  Dataset empty;
  empty.design.columns = {{}};
  empty.design.labels = {"x1"};
  CHECK_THROWS_AS(best_rss_per_size(empty, 1), DataError);
  CHECK_THROWS_AS(best_rss_per_size_exhaustive(d, 26), ParamError);
}

}  // TEST_SUITE
