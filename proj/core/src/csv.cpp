#include "pindex/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pindex/errors.hpp"

namespace pindex {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

bool parse_double(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last && std::isfinite(out);
}

class ProblemList {
 public:
  void add(std::string problem) {
    if (problems_.size() < 50)
      problems_.push_back(std::move(problem));
    else
      ++overflow_;
  }
  bool empty() const { return problems_.empty(); }
  std::string render(const std::string& path) const {
    std::ostringstream os;
    os << path << ": " << problems_.size() + overflow_ << " problem(s)";
    for (const auto& p : problems_) os << "\n  " << p;
    if (overflow_ > 0) os << "\n  ... and " << overflow_ << " more";
    return os.str();
  }

 private:
  std::vector<std::string> problems_;
  std::size_t overflow_ = 0;
};

}  // namespace

Dataset ingest_csv(const std::string& path, const std::string& response_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");

  std::string line;
  std::vector<std::string> headers;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    headers = split_fields(line);
    break;
  }
  if (headers.empty()) throw DataError(path + ": empty file, expected a header row");

  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (headers[i].empty())
      throw DataError(path + ": header column " + std::to_string(i + 1) +
                      " is empty");
    for (std::size_t j = i + 1; j < headers.size(); ++j)
      if (headers[i] == headers[j])
        throw DataError(path + ": duplicate column name '" + headers[i] + "'");
  }

  const auto rit = std::find(headers.begin(), headers.end(), response_column);
  if (rit == headers.end()) {
    std::string msg = path + ": no column named '" + response_column +
                      "'; columns are:";
    for (const auto& h : headers) msg += " '" + h + "'";
    throw DataError(msg);
  }
  const std::size_t response_idx =
      static_cast<std::size_t>(rit - headers.begin());
  if (headers.size() < 2)
    throw DataError(path + ": the response is the only column, no predictors");

  ProblemList problems;
  std::vector<Vec> cells(headers.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != headers.size()) {
      problems.add("line " + std::to_string(line_no) + ": expected " +
                   std::to_string(headers.size()) + " fields, found " +
                   std::to_string(fields.size()));
      continue;
    }
    bool row_ok = true;
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], row[c])) {
        problems.add("line " + std::to_string(line_no) + ", column '" +
                     headers[c] + "': not a finite number ('" + fields[c] +
                     "')");
        row_ok = false;
      }
    }
    if (!row_ok) continue;
    for (std::size_t c = 0; c < fields.size(); ++c) cells[c].push_back(row[c]);
  }
  if (!problems.empty()) throw DataError(problems.render(path));
  if (cells[0].empty()) throw DataError(path + ": no data rows");

  Dataset out;
  out.y = std::move(cells[response_idx]);
  out.design.n = out.y.size();
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c == response_idx) continue;
    out.design.labels.push_back(headers[c]);
    out.design.columns.push_back(std::move(cells[c]));
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<Vec>& columns) {
  if (headers.size() != columns.size())
    throw ParamError("csv writer: header/column count mismatch");
  for (const auto& c : columns)
    if (c.size() != columns.front().size())
      throw ParamError("csv writer: columns differ in length");

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < headers.size(); ++c)
    out << (c ? "," : "") << headers[c];
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_double(columns[c][r]);
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_csv_rows(const std::string& path,
                    const std::vector<std::string>& headers,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < headers.size(); ++c)
    out << (c ? "," : "") << headers[c];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != headers.size())
      throw ParamError("csv writer: row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << row[c];
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_dataset_csv(const std::string& path, const Dataset& dataset,
                       const std::string& response_label) {
  std::vector<std::string> headers;
  std::vector<Vec> columns;
  headers.push_back(response_label);
  columns.push_back(dataset.y);
  for (std::size_t c = 0; c < dataset.design.term_count(); ++c) {
    headers.push_back(c < dataset.design.labels.size()
                          ? dataset.design.labels[c]
                          : "c" + std::to_string(c + 1));
    columns.push_back(dataset.design.columns[c]);
  }
  write_csv(path, headers, columns);
}

}  // namespace pindex
