#include "pindex/subset_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pindex/criteria.hpp"
#include "pindex/errors.hpp"
#include "pindex/linalg.hpp"

namespace pindex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Champion {
  double rss = kInf;
  std::vector<int> terms;
};

class Searcher {
 public:
  Searcher(const Dataset& ds, int p, SearchStats* stats)
      : ds_(ds), p_(p), stats_(stats), qr_(ds.y), champions_(static_cast<std::size_t>(p) + 1) {
    Vec ones(ds.n(), 1.0);
    qr_.push(ones);
    double yy = 0.0;
    for (double v : ds.y) yy += v * v;
    slack_ = 1e-12 * (yy + 1.0);
  }

  std::map<int, SizeChampion> run() {
    std::vector<int> undecided(static_cast<std::size_t>(p_));
    for (int j = 0; j < p_; ++j) undecided[static_cast<std::size_t>(j)] = j;
    explore({}, undecided);

    std::map<int, SizeChampion> out;
    for (int s = 1; s <= p_; ++s) {
      const Champion& c = champions_[static_cast<std::size_t>(s)];
      if (!std::isfinite(c.rss)) continue;
      ModelSpec model;
      model.terms = c.terms;
      model.intercept = true;
      FitSummary fit = least_squares_fit(ds_, model);
      model.rank = fit.rank;
      out[s] = SizeChampion{std::move(model), fit.rss};
    }
    return out;
  }

 private:
  void update_champion(int size, double rss, const std::vector<int>& terms) {
    if (size < 1 || size > p_) return;
    Champion& c = champions_[static_cast<std::size_t>(size)];
    if (rss < c.rss - slack_) {
      c.rss = rss;
      c.terms = terms;
      return;
    }
    // Equal to working precision: prefer the lexicographically smaller term
    // set, matching the canonical enumeration's exact-tie rule.
    if (rss <= c.rss + slack_ && terms < c.terms) {
      c.rss = std::min(rss, c.rss);
      c.terms = terms;
    }
  }

  // True when no completion size of a node with this bound can still beat an
  // incumbent champion.
  bool prunable(double bound, int min_size, int max_size) const {
    for (int s = std::max(min_size, 1); s <= max_size; ++s) {
      if (bound <= champions_[static_cast<std::size_t>(s)].rss + slack_) {
        return false;
      }
    }
    return true;
  }

  // qr_ holds the intercept plus the forced-in terms on entry and exit.
  void explore(const std::vector<int>& forced_in, const std::vector<int>& undecided) {
    if (stats_) ++stats_->nodes;
    const int nf = static_cast<int>(forced_in.size());
    const int nu = static_cast<int>(undecided.size());

    for (int j : undecided) {
      qr_.push(ds_.design.columns[static_cast<std::size_t>(j)]);
    }
    if (stats_) ++stats_->bound_evaluations;
    const double rss_full = qr_.rss();

    std::vector<int> full_terms = forced_in;
    full_terms.insert(full_terms.end(), undecided.begin(), undecided.end());
    std::sort(full_terms.begin(), full_terms.end());
    update_champion(nf + nu, rss_full, full_terms);

    if (nu == 0) {
      return;
    }

    // rss increase when each undecided term is dropped from the full model.
    std::vector<double> drop(static_cast<std::size_t>(nu), 0.0);
    if (qr_.all_independent()) {
      const std::vector<double> all = qr_.drop_one_rss_increase();
      // Push order was: intercept, forced_in..., undecided...
      for (int i = 0; i < nu; ++i) {
        drop[static_cast<std::size_t>(i)] = all[static_cast<std::size_t>(1 + nf + i)];
      }
    } else {
      // Dependent columns break the triangular-factor shortcut; refit.
      for (int i = 0; i < nu; ++i) {
        IncrementalQr scratch(ds_.y);
        Vec ones(ds_.n(), 1.0);
        scratch.push(ones);
        for (int j : forced_in) {
          scratch.push(ds_.design.columns[static_cast<std::size_t>(j)]);
        }
        for (int k = 0; k < nu; ++k) {
          if (k == i) continue;
          scratch.push(ds_.design.columns[static_cast<std::size_t>(undecided[static_cast<std::size_t>(k)])]);
        }
        drop[static_cast<std::size_t>(i)] = scratch.rss() - rss_full;
      }
    }

    for (int i = 0; i < nu; ++i) {
      std::vector<int> without = full_terms;
      without.erase(std::find(without.begin(), without.end(), undecided[static_cast<std::size_t>(i)]));
      update_champion(nf + nu - 1, rss_full + drop[static_cast<std::size_t>(i)], without);
    }

    for (int i = 0; i < nu; ++i) qr_.pop();

    if (nu == 1) {
      return;
    }

    // Branch on the term whose deletion hurts most.
    int branch_pos = 0;
    for (int i = 1; i < nu; ++i) {
      if (drop[static_cast<std::size_t>(i)] > drop[static_cast<std::size_t>(branch_pos)]) {
        branch_pos = i;
      }
    }
    const int branch_term = undecided[static_cast<std::size_t>(branch_pos)];
    std::vector<int> remaining;
    remaining.reserve(static_cast<std::size_t>(nu) - 1);
    for (int i = 0; i < nu; ++i) {
      if (i != branch_pos) remaining.push_back(undecided[static_cast<std::size_t>(i)]);
    }

    // Include child first: same full model, so its bound is rss_full.
    if (!prunable(rss_full, nf + 1, nf + nu)) {
      std::vector<int> forced_next = forced_in;
      forced_next.push_back(branch_term);
      qr_.push(ds_.design.columns[static_cast<std::size_t>(branch_term)]);
      explore(forced_next, remaining);
      qr_.pop();
    } else if (stats_) {
      ++stats_->pruned;
    }

    // Exclude child: its full model drops the branch term.
    const double bound_excl = rss_full + drop[static_cast<std::size_t>(branch_pos)];
    if (!prunable(bound_excl, nf, nf + nu - 1)) {
      explore(forced_in, remaining);
    } else if (stats_) {
      ++stats_->pruned;
    }
  }

  const Dataset& ds_;
  int p_;
  SearchStats* stats_;
  IncrementalQr qr_;
  std::vector<Champion> champions_;
  double slack_ = 0.0;
};

}  // namespace

std::map<int, SizeChampion> best_rss_per_size(const Dataset& dataset, int p,
                                              SearchStats* stats) {
  if (p < 1 || p > 60) throw ParamError("best_rss_per_size: p outside 1..60");
  if (static_cast<std::size_t>(p) > dataset.design.term_count()) {
    throw ParamError("best_rss_per_size: p exceeds design term count");
  }
  if (dataset.n() == 0) throw DataError("best_rss_per_size: empty dataset");
  Searcher searcher(dataset, p, stats);
  return searcher.run();
}

std::map<int, SizeChampion> best_rss_per_size_exhaustive(const Dataset& dataset,
                                                         int p) {
  if (p < 1 || p > 25) {
    throw ParamError("best_rss_per_size_exhaustive: p outside 1..25");
  }
  std::map<int, SizeChampion> out;
  for (std::uint64_t mask = 1; mask < (1ULL << p); ++mask) {
    ModelSpec model;
    model.intercept = true;
    for (int j = 0; j < p; ++j) {
      if (mask & (1ULL << j)) model.terms.push_back(j);
    }
    const FitSummary fit = least_squares_fit(dataset, model);
    const int size = static_cast<int>(model.terms.size());
    auto it = out.find(size);
    if (it == out.end() || fit.rss < it->second.rss ||
        (fit.rss == it->second.rss && model.terms < it->second.model.terms)) {
      model.rank = fit.rank;
      out[size] = SizeChampion{model, fit.rss};
    }
  }
  return out;
}

namespace {

SelectionResult score_champions(const Dataset& dataset,
                                const std::map<int, SizeChampion>& champions,
                                Criterion crit) {
  const std::size_t n = dataset.n();
  bool have = false;
  SelectionResult best;
  for (const auto& [size, champ] : champions) {
    FitSummary fit = least_squares_fit(dataset, champ.model);
    if (static_cast<std::size_t>(fit.rank) >= n) continue;
    const double score = criterion_score(crit, fit, n);
    ModelSpec model = champ.model;
    model.rank = fit.rank;
    if (!have || selection_preferred(score, model, best.score, best.model)) {
      best = SelectionResult{std::move(model), std::move(fit), score, crit};
      have = true;
    }
  }
  if (!have) {
    throw SelectionError("selection: no candidate model could be scored");
  }
  return best;
}

SelectionResult select_nested(const Dataset& dataset, const Family& family,
                              Criterion crit) {
  const std::size_t n = dataset.n();
  bool have = false;
  SelectionResult best;
  for (int order = 1; order <= family.config().max_order; ++order) {
    ModelSpec model = family.model_for_order(order);
    FitSummary fit = least_squares_fit(dataset, model);
    if (static_cast<std::size_t>(fit.rank) >= n) continue;
    const double score = criterion_score(crit, fit, n);
    model.rank = fit.rank;
    if (!have || selection_preferred(score, model, best.score, best.model)) {
      best = SelectionResult{std::move(model), std::move(fit), score, crit};
      have = true;
    }
  }
  if (!have) {
    throw SelectionError("selection: no candidate model could be scored");
  }
  return best;
}

}  // namespace

SelectionResult select_best(const Dataset& dataset, const Family& family,
                            Criterion crit) {
  if (family.kind() == FamilyKind::nested_order) {
    return select_nested(dataset, family, crit);
  }
  const auto champions =
      best_rss_per_size(dataset, family.config().predictor_count, nullptr);
  return score_champions(dataset, champions, crit);
}

DualSelection select_both(const Dataset& dataset, const Family& family) {
  if (family.kind() == FamilyKind::nested_order) {
    return DualSelection{select_nested(dataset, family, Criterion::aic),
                         select_nested(dataset, family, Criterion::bic)};
  }
  const auto champions =
      best_rss_per_size(dataset, family.config().predictor_count, nullptr);
  return DualSelection{score_champions(dataset, champions, Criterion::aic),
                       score_champions(dataset, champions, Criterion::bic)};
}

}  // namespace pindex
