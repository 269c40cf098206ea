#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "pindex/csv.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string tag = "pindex_cli_" + std::to_string(::getpid()) + "_" +
                          std::to_string(counter++);
  const auto out_path = dir / (tag + ".out");
  const auto err_path = dir / (tag + ".err");
  const std::string cmd = std::string("\"") + PINDEX_CLI_PATH + "\" " + args +
                          " > " + out_path.string() + " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::error_code ec;
  std::filesystem::remove(out_path, ec);
  std::filesystem::remove(err_path, ec);
  return r;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) {
    path = std::filesystem::temp_directory_path() /
           ("pindex_cli_dir_" + std::to_string(::getpid()) + "_" + name);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

std::string write_linear_csv(const TempDir& dir, const std::string& name) {
  const auto p = dir.path / name;
  std::ofstream f(p);
  f << "y,a,b\n";
  for (int i = 0; i < 40; ++i) {
    const double a = 0.37 * i - 7.0;
    const double b = (i % 7) * 1.31 - 3.0;
    const double noise = ((i * 2654435761u) % 1000) / 1000.0 - 0.5;
    const double y = 2.0 + 1.5 * a - 0.8 * b + noise;
    f << pindex::format_double(y) << ',' << pindex::format_double(a) << ','
      << pindex::format_double(b) << '\n';
  }
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and missing subcommand") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("pi --help").code == 0);
  const CliResult bare = run_cli("");
  CHECK(bare.code == 3);
  CHECK(bare.err.find("pindex-error/1") != std::string::npos);
  CHECK(run_cli("pi --preset example3 --bogus 1").code == 3);
}

TEST_CASE("index diagnostics on a preset") {
  const CliResult r = run_cli("pi --preset example3 --seed 5");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("command") == "pi");
  CHECK(doc.at("config").at("data_source") == "preset:example3");
  CHECK(doc.at("config").at("family").at("kind") == "subset");
  CHECK(doc.at("config").at("cutoff") == 1.2);
  CHECK(doc.at("result").contains("classification"));
  CHECK(doc.at("result").at("pi").is_number());
}

TEST_CASE("reruns and thread counts give identical bytes") {
  const std::string args = "simulate --preset example3 --reps 40 --seed 11";
  const CliResult a = run_cli(args + " --threads 1");
  const CliResult b = run_cli(args + " --threads 3");
  const CliResult c = run_cli(args + " --threads 1");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(!a.out.empty());
}

TEST_CASE("unknown preset lists the valid names") {
  const CliResult r = run_cli("pi --preset bogus");
  CHECK(r.code == 3);
  CHECK(r.err.find("valid presets") != std::string::npos);
  CHECK(r.err.find("example7") != std::string::npos);
}

TEST_CASE("configuration problems are reported together") {
  const CliResult r = run_cli("fit --data missing.csv --family nested --sigma 0");
  CHECK(r.code == 3);
  CHECK(r.err.find("--response is required") != std::string::npos);
  CHECK(r.err.find("--max-order") != std::string::npos);
  CHECK(r.err.find("--sigma must be a positive") != std::string::npos);
}

TEST_CASE("fit on a csv file") {
  TempDir dir("fit");
  const std::string csv = write_linear_csv(dir, "lin.csv");
  const CliResult r =
      run_cli("fit --data " + csv + " --response y --family subset");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("config").at("data_source") == "csv:" + csv);
  CHECK(doc.at("result").at("n") == 40);
  const json& sel = doc.at("result").at("selected");
  CHECK(sel.at("criterion") == "bic");
  CHECK(sel.contains("coefficients"));
  CHECK(sel.at("term_labels").size() == sel.at("terms").size());
}

TEST_CASE("nested family from csv input") {
  TempDir dir("nested");
  const auto p = dir.path / "curve.csv";
  {
    std::ofstream f(p);
    f << "y,x\n";
    for (int i = 0; i < 40; ++i) {
      const double x = (i - 20) / 8.0;
      const double wiggle = ((i * 1103515245u) % 997) / 997.0 - 0.5;
      f << pindex::format_double(1.0 - 2.0 * x + 0.5 * x * x * x + 0.2 * wiggle)
        << ',' << pindex::format_double(x) << '\n';
    }
  }
  const CliResult r = run_cli("pi --data " + p.string() +
                              " --response y --family nested --max-order 6");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("config").at("family").at("kind") == "nested");
  CHECK(doc.at("config").at("family").at("max_order") == 6);
  CHECK(doc.at("config").at("cutoff") == 1.6);
  const std::string label = doc.at("result").at("selected").at("label");
  CHECK(label.rfind("order=", 0) == 0);
}

TEST_CASE("io and data failures use distinct exit codes") {
  const CliResult io =
      run_cli("fit --data /no/such/dir/x.csv --response y --family subset");
  CHECK(io.code == 7);
  CHECK(json::parse(io.err).at("category") == "io");

  TempDir dir("bad");
  const auto p = dir.path / "bad.csv";
  {
    std::ofstream f(p);
    f << "y,x\n1,2\n3,abc\n";
  }
  const CliResult data =
      run_cli("fit --data " + p.string() + " --response y --family subset");
  CHECK(data.code == 2);
  const json err = json::parse(data.err);
  CHECK(err.at("category") == "data");
  CHECK(err.at("message").get<std::string>().find("not a finite number") !=
        std::string::npos);
}

TEST_CASE("known noise level is echoed in the header") {
  const CliResult r = run_cli("pi --preset example3 --sigma 5 --seed 5");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("config").at("criterion").at("sigma_mode") == "known");
  CHECK(doc.at("config").at("criterion").at("sigma2") == 25.0);
  CHECK(doc.at("result").at("sigma_mode") == "known");
}

TEST_CASE("coverage with the oracle fit") {
  const CliResult r = run_cli(
      "coverage --preset example3 --reps 20 --level 0.9 --oracle --seed 7 "
      "--threads 2");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("command") == "coverage");
  CHECK(doc.at("result").at("oracle_fit") == true);
  CHECK(doc.at("result").at("level") == 0.9);
  const double overall = doc.at("result").at("overall").get<double>();
  CHECK(overall >= 0.7);
  CHECK(overall <= 1.0);
}

TEST_CASE("subsample flags duplicate sizes") {
  const CliResult r = run_cli(
      "subsample --preset example3 --sizes 80,120,80 --reps 4 --seed 9 "
      "--threads 2");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("result").at("duplicates_removed") == true);
  REQUIRE(doc.at("result").at("curves").size() == 2);
  CHECK(doc.at("result").at("curves")[0].at("size") == 80);
  CHECK(doc.at("result").at("curves")[1].at("size") == 120);
}

TEST_CASE("bootstrap and risk round trips") {
  const CliResult boot =
      run_cli("bootstrap --preset example3 --reps 10 --seed 5 --threads 2");
  REQUIRE(boot.code == 0);
  CHECK(json::parse(boot.out).at("result").at("resamples") == 10);

  const CliResult risk =
      run_cli("risk --preset example1_case1 --reps 10 --seed 2 --threads 2");
  REQUIRE(risk.code == 0);
  const json doc = json::parse(risk.out);
  CHECK(doc.at("result").at("methods").contains("adaptive"));
  CHECK(doc.at("result").at("reps") == 10);
}

TEST_CASE("the report file duplicates stdout") {
  TempDir dir("out");
  const auto report = dir.path / "report.json";
  const CliResult r =
      run_cli("pi --preset example3 --seed 5 --out " + report.string());
  REQUIRE(r.code == 0);
  CHECK(slurp(report) == r.out);
}

TEST_CASE("simulation tables land next to the report") {
  TempDir dir("tables");
  const auto report = dir.path / "sim.json";
  const CliResult r = run_cli("simulate --preset example3 --reps 10 --seed 3 " +
                              std::string("--out ") + report.string());
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("result").at("records_csv") == "sim_records.csv");
  CHECK(doc.at("result").at("percentiles_csv") == "sim_percentiles.csv");

  const std::string records = slurp(dir.path / "sim_records.csv");
  std::size_t lines = 0;
  for (char ch : records)
    if (ch == '\n') ++lines;
  CHECK(lines == 11);
  CHECK(records.rfind("rep,ok,model,size,rank,pi,pi_sentinel,sigma_hat,tse,"
                      "classification,error\n",
                      0) == 0);

  const std::string percentiles = slurp(dir.path / "sim_percentiles.csv");
  CHECK(percentiles.rfind("percentile,pi,size,sigma_hat\n", 0) == 0);
}

}  // TEST_SUITE
