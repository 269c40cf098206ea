#include "pindex/report.hpp"

#include <json.hpp>

namespace pindex {

namespace {

using json = nlohmann::ordered_json;

const char* criterion_name(Criterion c) {
  return c == Criterion::aic ? "aic" : "bic";
}

json family_json(const Family& family) {
  json f;
  if (family.kind() == FamilyKind::nested_order) {
    f["kind"] = "nested";
    f["max_order"] = family.config().max_order;
  } else {
    f["kind"] = "subset";
    f["terms"] = family.config().predictor_count;
    f["intercept_policy"] =
        family.config().intercept_policy == InterceptPolicy::always
            ? "always"
            : "selectable";
  }
  return f;
}

json header_json(const ReportHeader& h, const Family& family) {
  json cfg;
  cfg["data_source"] = h.data_source;
  cfg["family"] = family_json(family);
  json crit;
  crit["lambda"] = h.cfg.lambda;
  crit["d"] = h.cfg.d;
  if (h.cfg.sigma_mode == SigmaMode::known) {
    crit["sigma_mode"] = "known";
    crit["sigma2"] = h.cfg.sigma2;
  } else {
    crit["sigma_mode"] = "estimated";
  }
  cfg["criterion"] = crit;
  cfg["cutoff"] = h.cutoff;
  cfg["seed"] = h.seed;

  json root;
  root["schema"] = "pindex-report/1";
  root["command"] = h.command;
  root["config"] = cfg;
  return root;
}

json term_labels(const Dataset& data, const ModelSpec& model) {
  json arr = json::array();
  for (int t : model.terms) {
    const auto idx = static_cast<std::size_t>(t);
    arr.push_back(idx < data.design.labels.size() ? data.design.labels[idx]
                                                  : "c" + std::to_string(t + 1));
  }
  return arr;
}

json selection_json(const Family& family, const Dataset& data,
                    const SelectionResult& sel, bool with_coefficients) {
  json m;
  m["label"] = model_label(sel.model, family);
  m["terms"] = sel.model.terms;
  m["term_labels"] = term_labels(data, sel.model);
  m["intercept"] = sel.model.intercept;
  m["rank"] = sel.fit.rank;
  m["rss"] = sel.fit.rss;
  m["sigma_hat2"] = sel.fit.sigma_hat2;
  m["criterion"] = criterion_name(sel.criterion);
  m["score"] = sel.score;
  if (with_coefficients) {
    json coefs = json::array();
    std::size_t idx = 0;
    if (sel.model.intercept) {
      json c;
      c["term"] = "(intercept)";
      c["value"] = sel.fit.coefficients[idx++];
      coefs.push_back(c);
    }
    for (int t : sel.model.terms) {
      json c;
      const auto col = static_cast<std::size_t>(t);
      c["term"] = col < data.design.labels.size()
                      ? data.design.labels[col]
                      : "c" + std::to_string(t + 1);
      c["value"] = sel.fit.coefficients[idx++];
      coefs.push_back(c);
    }
    m["coefficients"] = coefs;
  }
  return m;
}

json percentiles_json(const std::map<std::string, double>& p) {
  json out;
  for (const auto& [key, value] : p) out[key] = value;
  return out;
}

json frequency_json(const std::vector<std::pair<std::string, double>>& table) {
  json arr = json::array();
  for (const auto& [label, share] : table) {
    json row;
    row["model"] = label;
    row["share"] = share;
    arr.push_back(row);
  }
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string report_fit(const ReportHeader& h, const Family& family,
                       const Dataset& data, const SelectionResult& sel) {
  json root = header_json(h, family);
  json result;
  result["n"] = data.n();
  result["selected"] = selection_json(family, data, sel, true);
  root["result"] = result;
  return dump(root);
}

std::string report_pi(const ReportHeader& h, const Family& family,
                      const Dataset& data, const SelectionResult& sel,
                      const PiReport& pi) {
  json root = header_json(h, family);
  json result;
  result["n"] = data.n();
  result["selected"] = selection_json(family, data, sel, false);
  result["pi"] = pi.pi;
  result["sentinel"] = pi.sentinel;
  result["degenerate"] = pi.degenerate;
  result["classification"] = pi.classification == Classification::practically_parametric
                                 ? "practically_parametric"
                                 : "practically_nonparametric";
  result["cutoff"] = pi.cutoff_used;
  result["sigma_mode"] =
      pi.sigma_mode == SigmaMode::known ? "known" : "estimated";
  result["sigma2_ref"] = pi.sigma2_ref;
  result["ic_selected"] = pi.ic_selected;
  json subs = json::array();
  for (const auto& [model, ic] : pi.submodel_ics) {
    json s;
    s["label"] = model_label(model, family);
    s["ic"] = ic;
    subs.push_back(s);
  }
  result["submodels"] = subs;
  if (pi.argmin_submodel)
    result["argmin_submodel"] = model_label(*pi.argmin_submodel, family);
  root["result"] = result;
  return dump(root);
}

std::string report_simulation(const ReportHeader& h, const Family& family,
                              const SimSummary& summary,
                              const std::string& records_csv,
                              const std::string& percentiles_csv) {
  json root = header_json(h, family);
  json result;
  result["dgp"] = summary.dgp_name;
  result["method"] = summary.method;
  result["reps"] = summary.reps;
  result["base_seed"] = summary.base_seed;
  result["failures"] = summary.failures;
  result["pi_percentiles"] = percentiles_json(summary.pi_percentiles);
  result["size_percentiles"] = percentiles_json(summary.size_percentiles);
  result["sigma_percentiles"] = percentiles_json(summary.sigma_percentiles);
  result["selection_frequency"] = frequency_json(summary.selection_frequency);
  result["mean_tse"] = summary.mean_tse;
  result["tse_standard_error"] = summary.tse_standard_error;
  if (!records_csv.empty()) result["records_csv"] = records_csv;
  if (!percentiles_csv.empty()) result["percentiles_csv"] = percentiles_csv;
  root["result"] = result;
  return dump(root);
}

std::string report_bootstrap(const ReportHeader& h, const Family& family,
                             const Dataset& data,
                             const SelectionResult& original,
                             const BootstrapReport& boot) {
  json root = header_json(h, family);
  json result;
  result["n"] = data.n();
  result["original"] = selection_json(family, data, original, false);
  result["resamples"] = boot.resamples;
  result["failures"] = boot.failures;
  result["reselect_frequency"] = boot.reselect_frequency;
  result["frequency_table"] = frequency_json(boot.frequency_table);
  result["pi_percentiles"] = percentiles_json(boot.pi_percentiles);
  root["result"] = result;
  return dump(root);
}

std::string report_subsample(const ReportHeader& h, const Family& family,
                             const SubsampleReport& rep) {
  json root = header_json(h, family);
  json result;
  result["reps"] = rep.reps;
  result["duplicates_removed"] = rep.duplicates_removed;
  result["failures"] = rep.failures;
  json curves = json::array();
  for (const auto& curve : rep.curves) {
    json c;
    c["size"] = curve.size;
    c["pi_percentiles"] = percentiles_json(curve.pi_percentiles);
    curves.push_back(c);
  }
  result["curves"] = curves;
  root["result"] = result;
  return dump(root);
}

std::string report_coverage(const ReportHeader& h, const Family& family,
                            const CoverageReport& rep, bool oracle_fit) {
  json root = header_json(h, family);
  json result;
  result["level"] = rep.level;
  result["reps"] = rep.reps;
  result["oracle_fit"] = oracle_fit;
  result["failures"] = rep.failures;
  result["overall"] = rep.overall;
  json per = json::array();
  for (const auto& [term, rate] : rep.per_coefficient) {
    json row;
    row["term"] = term;
    row["coverage"] = rate;
    per.push_back(row);
  }
  result["per_coefficient"] = per;
  root["result"] = result;
  return dump(root);
}

std::string report_risk(const ReportHeader& h, const Family& family,
                        const RiskReport& rep) {
  json root = header_json(h, family);
  json result;
  result["reps"] = rep.reps;
  result["cutoff"] = rep.cutoff;
  result["failures"] = rep.failures;
  json methods;
  const auto method_json = [](const RiskSummary& s) {
    json m;
    m["mean_tse"] = s.mean;
    m["standard_error"] = s.standard_error;
    return m;
  };
  methods["aic"] = method_json(rep.aic);
  methods["bic"] = method_json(rep.bic);
  methods["adaptive"] = method_json(rep.adaptive);
  result["methods"] = methods;
  root["result"] = result;
  return dump(root);
}

std::string error_json(const std::string& category, const std::string& message) {
  json j;
  j["schema"] = "pindex-error/1";
  j["category"] = category;
  j["message"] = message;
  return dump(j);
}

}  // namespace pindex
