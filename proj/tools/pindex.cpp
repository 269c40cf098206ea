#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pindex/csv.hpp"
#include "pindex/errors.hpp"
#include "pindex/model_space.hpp"
#include "pindex/parallel.hpp"
#include "pindex/pi.hpp"
#include "pindex/report.hpp"
#include "pindex/sim.hpp"
#include "pindex/subset_search.hpp"

namespace {

using namespace pindex;

struct Options {
  std::string command;
  std::string data_path;
  std::string response;
  std::string preset;
  std::string family;
  int max_order = 0;
  double lambda = 1.0;
  double d = 0.0;
  std::optional<double> sigma;  // switches the criterion to known-noise mode
  double cutoff = 0.0;  // 0 means the family default
  std::string criterion = "bic";
  std::string method = "bic";
  std::size_t reps = 300;
  std::vector<std::size_t> sizes;
  double level = 0.95;
  bool oracle = false;
  std::uint64_t seed = 1;
  std::string out;
  int threads = 0;  // 0 means unset (environment, then hardware)
};

int exit_code_for(const std::string& category) {
  if (category == "data") return 2;
  if (category == "param") return 3;
  if (category == "selection") return 4;
  if (category == "study") return 5;
  if (category == "diagnostic") return 6;
  if (category == "io") return 7;
  return 1;
}

struct Inputs {
  std::optional<Dgp> dgp;
  std::optional<Dataset> data;
  std::optional<Family> family;
  std::string source;
  IcConfig cfg;
  double cutoff = 0.0;
  int workers = 1;
  Criterion crit = Criterion::bic;
  Method method = Method::bic;
};

bool is_dgp_command(const std::string& c) {
  return c == "simulate" || c == "coverage" || c == "risk";
}

Inputs resolve(const Options& o) {
  std::vector<std::string> problems;
  Inputs in;

  const bool has_data = !o.data_path.empty();
  const bool has_preset = !o.preset.empty();
  if (is_dgp_command(o.command)) {
    if (has_data)
      problems.push_back("'" + o.command + "' runs on a preset process; --data does not apply");
    if (!has_preset) problems.push_back("--preset is required for '" + o.command + "'");
  } else if (has_data == has_preset) {
    problems.push_back("exactly one data source is required (--data or --preset)");
  }
  if (has_data && o.response.empty())
    problems.push_back("--response is required with --data");
  if (has_data && o.family.empty())
    problems.push_back("--family is required with --data");
  if (has_data && o.family == "nested" && o.max_order < 1)
    problems.push_back("--max-order (at least 1) is required for --family nested");
  if (!has_data && !o.family.empty())
    problems.push_back("--family applies only to --data input; presets carry their own family");
  if (!has_data && o.max_order != 0)
    problems.push_back("--max-order applies only to --data input");
  if (!o.family.empty() && o.family != "nested" && o.family != "subset")
    problems.push_back("--family must be 'nested' or 'subset'");
  if (o.criterion != "bic" && o.criterion != "aic")
    problems.push_back("--criterion must be 'bic' or 'aic'");
  if (o.method != "bic" && o.method != "aic" && o.method != "adaptive")
    problems.push_back("--method must be 'bic', 'aic' or 'adaptive'");
  if (o.reps == 0) problems.push_back("--reps must be positive");
  if (!(o.lambda > 0.0)) problems.push_back("--lambda must be positive");
  if (o.d < 0.0) problems.push_back("--d must be nonnegative");
  if (o.sigma && !(*o.sigma > 0.0))
    problems.push_back("--sigma must be a positive noise standard deviation");
  if (o.cutoff < 0.0) problems.push_back("--cutoff must be positive");
  if (o.command == "subsample" && o.sizes.empty())
    problems.push_back("--sizes is required for 'subsample'");
  if (o.command == "coverage" && !(o.level > 0.0 && o.level < 1.0))
    problems.push_back("--level must lie strictly between 0 and 1");

  if (has_preset) {
    try {
      in.dgp = dgp_preset(o.preset);
      in.family = dgp_family(*in.dgp);
      in.source = "preset:" + o.preset;
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ParamError(msg);
  }

  if (has_preset && !is_dgp_command(o.command))
    in.data = generate_dataset(*in.dgp, o.seed);

  if (has_data) {
    Dataset raw = ingest_csv(o.data_path, o.response);
    if (o.family == "nested") {
      in.data = expand_nested_dataset(raw, o.max_order);
      FamilyConfig fc;
      fc.kind = FamilyKind::nested_order;
      fc.max_order = o.max_order;
      in.family = Family(fc);
    } else {
      FamilyConfig fc;
      fc.kind = FamilyKind::all_subset;
      fc.predictor_count = static_cast<int>(raw.design.term_count());
      in.family = Family(fc);
      in.data = std::move(raw);
    }
    in.source = "csv:" + o.data_path;
  }

  in.cfg.lambda = o.lambda;
  in.cfg.d = o.d;
  if (o.sigma) {
    in.cfg.sigma_mode = SigmaMode::known;
    in.cfg.sigma2 = *o.sigma * *o.sigma;
  }
  in.cutoff = o.cutoff > 0.0 ? o.cutoff : default_cutoff(in.family->kind());
  in.workers = resolve_worker_count(
      o.threads > 0 ? std::optional<int>(o.threads) : std::nullopt);
  in.crit = o.criterion == "aic" ? Criterion::aic : Criterion::bic;
  in.method = o.method == "aic"
                  ? Method::aic
                  : (o.method == "adaptive" ? Method::adaptive : Method::bic);
  return in;
}

std::string sanitize_cell(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

void write_simulation_tables(const std::string& out_path, const SimSummary& s,
                             std::string& records_name,
                             std::string& percentiles_name) {
  const std::filesystem::path base(out_path);
  const std::filesystem::path dir = base.parent_path();
  records_name = base.stem().string() + "_records.csv";
  percentiles_name = base.stem().string() + "_percentiles.csv";

  std::vector<std::vector<std::string>> rows;
  rows.reserve(s.records.size());
  for (const auto& r : s.records) {
    rows.push_back({std::to_string(r.rep), r.ok ? "1" : "0",
                    sanitize_cell(r.model_label), std::to_string(r.model_size),
                    std::to_string(r.rank), format_double(r.pi),
                    r.pi_sentinel ? "1" : "0", format_double(r.sigma_hat),
                    format_double(r.tse), sanitize_cell(r.classification),
                    sanitize_cell(r.error)});
  }
  write_csv_rows((dir / records_name).string(),
                 {"rep", "ok", "model", "size", "rank", "pi", "pi_sentinel",
                  "sigma_hat", "tse", "classification", "error"},
                 rows);

  std::vector<std::vector<std::string>> prows;
  for (const auto& [key, value] : s.pi_percentiles) {
    prows.push_back({key, format_double(value),
                     format_double(s.size_percentiles.at(key)),
                     format_double(s.sigma_percentiles.at(key))});
  }
  write_csv_rows((dir / percentiles_name).string(),
                 {"percentile", "pi", "size", "sigma_hat"}, prows);
}

int run_command(const Options& o) {
  Inputs in = resolve(o);

  ReportHeader h;
  h.command = o.command;
  h.data_source = in.source;
  h.seed = o.seed;
  h.cfg = in.cfg;
  h.cutoff = in.cutoff;

  std::string report;
  if (o.command == "fit") {
    const SelectionResult sel = select_best(*in.data, *in.family, in.crit);
    report = report_fit(h, *in.family, *in.data, sel);
  } else if (o.command == "pi") {
    const SelectionResult sel = select_best(*in.data, *in.family, in.crit);
    const PiReport pi = compute_pi(*in.data, sel, *in.family, in.cfg, in.cutoff);
    report = report_pi(h, *in.family, *in.data, sel, pi);
  } else if (o.command == "simulate") {
    const SimSummary s = run_replications(*in.dgp, o.reps, in.method, in.cfg,
                                          in.cutoff, o.seed, in.workers);
    std::string records_name, percentiles_name;
    if (!o.out.empty())
      write_simulation_tables(o.out, s, records_name, percentiles_name);
    report = report_simulation(h, *in.family, s, records_name, percentiles_name);
  } else if (o.command == "bootstrap") {
    const SelectionResult sel = select_best(*in.data, *in.family, in.crit);
    const BootstrapReport b = parametric_bootstrap(
        *in.data, sel, *in.family, in.cfg, in.cutoff, o.reps, o.seed, in.workers);
    report = report_bootstrap(h, *in.family, *in.data, sel, b);
  } else if (o.command == "subsample") {
    const SubsampleReport r = subsample_study(*in.data, o.sizes, o.reps, o.seed,
                                              *in.family, in.cfg, in.cutoff,
                                              in.workers);
    report = report_subsample(h, *in.family, r);
  } else if (o.command == "coverage") {
    const CoverageReport r = coverage_study(*in.dgp, o.level, o.reps, in.cfg,
                                            o.seed, in.workers, o.oracle);
    report = report_coverage(h, *in.family, r, o.oracle);
  } else if (o.command == "risk") {
    const RiskReport r = risk_comparison(*in.dgp, o.reps, in.cutoff, in.cfg,
                                         o.seed, in.workers);
    report = report_risk(h, *in.family, r);
  } else {
    throw ParamError("unknown command '" + o.command + "'");
  }

  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw IoError("cannot open '" + o.out + "' for writing");
    f << report;
    if (!f) throw IoError("write to '" + o.out + "' failed");
  }
  std::cout << report;
  return 0;
}

void add_source_options(CLI::App* sub, Options& o) {
  sub->add_option("--data", o.data_path, "CSV input file (header row)");
  sub->add_option("--response", o.response, "response column name (with --data)");
  sub->add_option("--preset", o.preset, "named data-generating process");
  sub->add_option("--family", o.family,
                  "candidate family for --data input: nested | subset");
  sub->add_option("--max-order", o.max_order,
                  "largest polynomial order (nested family)");
}

void add_preset_option(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "named data-generating process")
      ->required();
}

void add_common_options(CLI::App* sub, Options& o) {
  sub->add_option("--lambda", o.lambda, "criterion penalty multiplier");
  sub->add_option("--d", o.d, "criterion drift coefficient");
  sub->add_option("--sigma", o.sigma,
                  "known noise standard deviation (omit to estimate)");
  sub->add_option("--cutoff", o.cutoff,
                  "classification cutoff (default 1.6 nested, 1.2 subset)");
  sub->add_option("--seed", o.seed, "random seed (echoed in the report)");
  sub->add_option("--out", o.out, "write the JSON report to this path");
  sub->add_option("--threads", o.threads,
                  "worker threads (default: PINDEX_THREADS, then hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-selection diagnostics for linear regression"};
  app.require_subcommand(1);
  Options o;

  auto* fit = app.add_subcommand("fit", "select and fit the best model");
  add_source_options(fit, o);
  add_common_options(fit, o);
  fit->add_option("--criterion", o.criterion, "selection criterion: bic | aic");

  auto* pi = app.add_subcommand(
      "pi", "selection diagnostics: index, classification, sub-model table");
  add_source_options(pi, o);
  add_common_options(pi, o);
  pi->add_option("--criterion", o.criterion, "selection criterion: bic | aic");

  auto* sim = app.add_subcommand("simulate", "replication study of a preset");
  add_preset_option(sim, o);
  add_common_options(sim, o);
  sim->add_option("--method", o.method, "selection rule: bic | aic | adaptive");
  sim->add_option("--reps", o.reps, "number of replications");

  auto* boot = app.add_subcommand("bootstrap",
                                  "parametric bootstrap of the selection");
  add_source_options(boot, o);
  add_common_options(boot, o);
  boot->add_option("--criterion", o.criterion, "selection criterion: bic | aic");
  boot->add_option("--reps", o.reps, "number of resamples");

  auto* subs = app.add_subcommand("subsample",
                                  "index stability over subsample sizes");
  add_source_options(subs, o);
  add_common_options(subs, o);
  subs->add_option("--sizes", o.sizes, "subsample sizes")
      ->delimiter(',');
  subs->add_option("--reps", o.reps, "subsamples per size");

  auto* cov = app.add_subcommand(
      "coverage", "post-selection confidence interval coverage");
  add_preset_option(cov, o);
  add_common_options(cov, o);
  cov->add_option("--level", o.level, "nominal confidence level");
  cov->add_option("--reps", o.reps, "number of replications");
  cov->add_flag("--oracle", o.oracle, "fit the true model instead of selecting");

  auto* risk = app.add_subcommand(
      "risk", "estimation risk of AIC, BIC and the adaptive switch");
  add_preset_option(risk, o);
  add_common_options(risk, o);
  risk->add_option("--reps", o.reps, "number of replications");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << pindex::error_json("param", e.what());
    return 3;
  }

  o.command = app.get_subcommands().front()->get_name();
  try {
    return run_command(o);
  } catch (const pindex::Error& e) {
    std::cerr << pindex::error_json(e.category(), e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << pindex::error_json("internal", e.what());
    return 1;
  }
}
