#include "sspred/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "sspred/error.hpp"

namespace sspred {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

Series read_series(const std::string& path, std::size_t column,
                   const std::string& missing_token) {
  if (column == 0) throw Error(ErrorCode::invalid_argument, "read_series: column is 1-based");
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);

  Series s;
  s.name = std::filesystem::path(path).stem().string();
  const bool keep_labels = column > 1;

  std::string line;
  std::size_t row = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++row;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::vector<std::string> cells = split_csv(stripped);
    if (cells.size() < column)
      throw Error(ErrorCode::parse_error,
                  path + ": row " + std::to_string(row) + " has fewer than " +
                      std::to_string(column) + " columns");
    const std::string& cell = cells[column - 1];

    double value = 0.0;
    const bool missing = cell.empty() || cell == missing_token;
    const bool numeric = !missing && parse_double(cell, value);

    if (first_content_row) {
      first_content_row = false;
      if (!missing && !numeric) {
        // header row
        if (!cell.empty()) s.name = cell;
        continue;
      }
    }
    if (!missing && !numeric)
      throw Error(ErrorCode::parse_error,
                  path + ": row " + std::to_string(row) + ": cannot parse \"" + cell + "\"");

    if (missing) {
      s.values.push_back(std::numeric_limits<double>::quiet_NaN());
      s.observed.push_back(0);
    } else {
      s.values.push_back(value);
      s.observed.push_back(1);
    }
    if (keep_labels) s.labels.push_back(cells[0]);
  }
  if (s.values.empty())
    throw Error(ErrorCode::insufficient_data, path + ": no data rows");
  return s;
}

std::string format_value(double x) {
  if (std::isnan(x)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp);
    out << content;
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot rename " + tmp + " to " + path);
}

}  // namespace

void write_tsv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << '\t';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      out << row[i];
    }
    out << '\n';
  }
  atomic_write(path, out.str());
}

void write_text(const std::string& path, const std::string& content) {
  atomic_write(path, content);
}

}  // namespace sspred
