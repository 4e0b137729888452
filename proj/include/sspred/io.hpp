#pragma once

#include <string>
#include <vector>

#include "sspred/series.hpp"

namespace sspred {

/// Read one column of a CSV (or single-column text) file. `column` is
/// 1-based. The missing token and empty cells map to missing values; a
/// non-numeric first row is treated as a header. With column > 1 the first
/// column is kept as time labels.
Series read_series(const std::string& path, std::size_t column = 1,
                   const std::string& missing_token = "NA");

/// Full-precision decimal formatting (17 significant digits, '.' decimal);
/// NaN renders as "NA". Values round-trip through parsing exactly.
std::string format_value(double x);

/// Write a TSV atomically (temp file + rename). Each row is already a list
/// of cell strings.
void write_tsv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Atomic plain-text write.
void write_text(const std::string& path, const std::string& content);

}  // namespace sspred
