#pragma once

#include <cstdint>
#include <string>

#include "pindex/model_space.hpp"
#include "pindex/pi.hpp"
#include "pindex/sim.hpp"
#include "pindex/types.hpp"

namespace pindex {

// Inputs echoed by every report. Reports carry no worker counts and no
// timestamps, so reruns with the same inputs are byte-identical.
struct ReportHeader {
  std::string command;
  std::string data_source;  // "preset:<name>" or "csv:<path>"
  std::uint64_t seed = 0;
  IcConfig cfg;
  double cutoff = 0.0;
};

std::string report_fit(const ReportHeader& h, const Family& family,
                       const Dataset& data, const SelectionResult& sel);

std::string report_pi(const ReportHeader& h, const Family& family,
                      const Dataset& data, const SelectionResult& sel,
                      const PiReport& pi);

std::string report_simulation(const ReportHeader& h, const Family& family,
                              const SimSummary& summary,
                              const std::string& records_csv,
                              const std::string& percentiles_csv);

std::string report_bootstrap(const ReportHeader& h, const Family& family,
                             const Dataset& data,
                             const SelectionResult& original,
                             const BootstrapReport& boot);

std::string report_subsample(const ReportHeader& h, const Family& family,
                             const SubsampleReport& rep);

std::string report_coverage(const ReportHeader& h, const Family& family,
                            const CoverageReport& rep, bool oracle_fit);

std::string report_risk(const ReportHeader& h, const Family& family,
                        const RiskReport& rep);

// Machine-readable error envelope (written to stderr by the driver).
std::string error_json(const std::string& category, const std::string& message);

}  // namespace pindex
