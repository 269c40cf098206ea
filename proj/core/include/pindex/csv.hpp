#pragma once

#include <string>
#include <vector>

#include "pindex/types.hpp"

namespace pindex {

// Reads a plain comma-separated file (header row, '.' decimal, no quoting).
// The named column becomes the response; every other column becomes a design
// term with its header as label. Blank lines are ignored. Ragged rows and
// non-numeric or non-finite cells are collected and reported together with
// their line numbers.
Dataset ingest_csv(const std::string& path, const std::string& response_column);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Column-oriented numeric table writer; columns must share a length.
void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<Vec>& columns);

// Row-oriented writer for mixed-type tables (cells already formatted).
void write_csv_rows(const std::string& path,
                    const std::vector<std::string>& headers,
                    const std::vector<std::vector<std::string>>& rows);

// Emits response + design columns, response first under `response_label`.
void write_dataset_csv(const std::string& path, const Dataset& dataset,
                       const std::string& response_label = "y");

}  // namespace pindex
