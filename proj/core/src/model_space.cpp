#include "pindex/model_space.hpp"

#include <algorithm>
#include <cmath>

#include "pindex/errors.hpp"
#include "pindex/linalg.hpp"

namespace pindex {

Family::Family(FamilyConfig config) : config_(config) {
  if (config_.kind == FamilyKind::nested_order) {
    if (config_.max_order < 1) throw ParamError("family: max_order must be >= 1");
    if (config_.intercept_policy == InterceptPolicy::selectable) {
      throw ParamError(
          "family: a selectable intercept has no meaning for nested-order "
          "families (the intercept is the order-0 floor)");
    }
  } else {
    if (config_.predictor_count < 1) {
      throw ParamError("family: predictor_count must be >= 1");
    }
    if (config_.predictor_count > 60) {
      throw ParamError("family: predictor_count above 60 is not supported");
    }
  }
}

Family build_family(const FamilyConfig& config) { return Family(config); }

std::uint64_t Family::model_count() const {
  if (config_.kind == FamilyKind::nested_order) {
    return static_cast<std::uint64_t>(config_.max_order);
  }
  const std::uint64_t subsets = (1ULL << config_.predictor_count) - 1ULL;
  return config_.intercept_policy == InterceptPolicy::selectable ? 2 * subsets
                                                                 : subsets;
}

ModelSpec Family::model_for_order(int order) const {
  if (config_.kind != FamilyKind::nested_order) {
    throw ParamError("model_for_order: not a nested family");
  }
  if (order < 0 || order > config_.max_order) {
    throw ParamError("model_for_order: order outside 0..max_order");
  }
  ModelSpec m;
  m.intercept = true;
  m.terms.reserve(static_cast<std::size_t>(order));
  for (int j = 0; j < order; ++j) m.terms.push_back(j);
  return m;
}

ModelSpec Family::model_for_mask(std::uint64_t mask, bool intercept) const {
  if (config_.kind != FamilyKind::all_subset) {
    throw ParamError("model_for_mask: not an all-subset family");
  }
  ModelSpec m;
  m.intercept = intercept;
  for (int j = 0; j < config_.predictor_count; ++j) {
    if (mask & (1ULL << j)) m.terms.push_back(j);
  }
  return m;
}

int Family::order_of(const ModelSpec& model) const {
  return static_cast<int>(model.terms.size());
}

std::vector<ModelSpec> submodels_one_less(const ModelSpec& model,
                                          const Dataset& dataset,
                                          const Family& family) {
  int parent_rank = model.rank;
  if (parent_rank < 0) {
    parent_rank = least_squares_fit(dataset, model).rank;
  }
  std::vector<ModelSpec> out;
  if (parent_rank <= 1) return out;

  if (family.kind() == FamilyKind::nested_order) {
    const int order = family.order_of(model);
    for (int o = order - 1; o >= 0; --o) {
      ModelSpec sub = family.model_for_order(o);
      const int r = least_squares_fit(dataset, sub).rank;
      if (r == parent_rank) continue;  // dependent top power, keep walking down
      if (r == parent_rank - 1) {
        sub.rank = r;
        out.push_back(std::move(sub));
      }
      break;
    }
    return out;
  }

  for (std::size_t i = 0; i < model.terms.size(); ++i) {
    ModelSpec sub = model;
    sub.rank = -1;
    sub.terms.erase(sub.terms.begin() + static_cast<std::ptrdiff_t>(i));
    const int r = least_squares_fit(dataset, sub).rank;
    if (r == parent_rank - 1) {
      sub.rank = r;
      out.push_back(std::move(sub));
    }
  }
  if (family.config().intercept_policy == InterceptPolicy::selectable &&
      model.intercept) {
    ModelSpec sub = model;
    sub.rank = -1;
    sub.intercept = false;
    const int r = least_squares_fit(dataset, sub).rank;
    if (r == parent_rank - 1) {
      sub.rank = r;
      out.push_back(std::move(sub));
    }
  }
  return out;
}

DesignMatrix build_polynomial_design(const Vec& x, int max_order) {
  if (max_order < 1) throw ParamError("build_polynomial_design: max_order must be >= 1");
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw DataError("build_polynomial_design: non-finite predictor value");
    }
  }
  DesignMatrix d;
  d.n = x.size();
  d.columns.reserve(static_cast<std::size_t>(max_order) + 1);
  d.labels.reserve(static_cast<std::size_t>(max_order) + 1);
  Vec col(x.size(), 1.0);
  d.columns.push_back(col);
  d.labels.push_back("x^0");
  for (int j = 1; j <= max_order; ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) col[i] *= x[i];
    d.columns.push_back(col);
    d.labels.push_back("x^" + std::to_string(j));
  }
  return d;
}

Dataset expand_nested_dataset(const Dataset& raw, int max_order) {
  if (raw.design.term_count() != 1) {
    throw ParamError(
        "nested-order selection needs exactly one predictor column, got " +
        std::to_string(raw.design.term_count()));
  }
  DesignMatrix powers = build_polynomial_design(raw.design.columns[0], max_order);
  Dataset out;
  out.y = raw.y;
  out.truth = raw.truth;
  out.sigma = raw.sigma;
  out.design.n = powers.n;
  out.design.columns.assign(powers.columns.begin() + 1, powers.columns.end());
  out.design.labels.assign(powers.labels.begin() + 1, powers.labels.end());
  return out;
}

std::string model_label(const ModelSpec& model, const Family& family) {
  if (family.kind() == FamilyKind::nested_order) {
    return "order=" + std::to_string(family.order_of(model));
  }
  if (model.terms.empty()) return model.intercept ? "const" : "empty";
  static const char* digits = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string label;
  for (int t : model.terms) {
    if (t < 35) {
      label.push_back(digits[t]);
    } else {
      label += "(" + std::to_string(t + 1) + ")";
    }
  }
  if (!model.intercept) label += "*";
  return label;
}

}  // namespace pindex
