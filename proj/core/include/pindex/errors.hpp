#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pindex {

// Base for all toolkit errors. `category()` is stable and machine-readable;
// the CLI maps each category to a fixed exit code.
class Error : public std::runtime_error {
public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

private:
  std::string category_;
};

// Malformed or inconsistent input data (non-finite values, length mismatches,
// unparsable CSV cells).
struct DataError : Error {
  explicit DataError(const std::string& w) : Error("data", w) {}
};

// Invalid configuration or parameter combinations.
struct ParamError : Error {
  explicit ParamError(const std::string& w) : Error("param", w) {}
};

// Model selection could not produce a result (e.g. every candidate fit
// degenerate).
struct SelectionError : Error {
  explicit SelectionError(const std::string& w) : Error("selection", w) {}
};

// A replication study failed beyond the tolerated failure rate.
struct StudyError : Error {
  explicit StudyError(const std::string& w) : Error("study", w) {}
};

// The requested diagnostic is undefined for this input (e.g. no admissible
// one-rank-less sub-model exists for the selected model).
struct DiagnosticError : Error {
  explicit DiagnosticError(const std::string& w) : Error("diagnostic", w) {}
};

// Filesystem problems.
struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io", w) {}
};

}  // namespace pindex
