#include "sspred/series.hpp"

#include <cmath>

#include "sspred/error.hpp"

namespace sspred {

Series Series::from_values(std::vector<double> v) {
  Series s;
  s.observed.assign(v.size(), 1);
  s.values = std::move(v);
  return s;
}

std::size_t Series::observed_count() const {
  std::size_t n = 0;
  for (auto f : observed) n += (f != 0);
  return n;
}

void Series::validate() const {
  if (values.empty()) throw Error(ErrorCode::insufficient_data, "series is empty");
  if (observed.size() != values.size())
    throw Error(ErrorCode::invalid_argument, "series: observed mask length mismatch");
  if (!labels.empty() && labels.size() != values.size())
    throw Error(ErrorCode::invalid_argument, "series: label count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (observed[i] && !std::isfinite(values[i]))
      throw Error(ErrorCode::nonfinite_value,
                  "series: non-finite value at index " + std::to_string(i + 1) +
                      " not flagged missing");
  }
}

}  // namespace sspred
