#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sspred {

/// Univariate series with explicit missing-value flags. A value may be NaN
/// only where the observed flag is clear; validate() enforces this.
struct Series {
  std::vector<double> values;
  std::vector<std::uint8_t> observed;   // 1 where a value is present
  std::string name;
  std::vector<std::string> labels;      // optional time labels, empty or size()

  static Series from_values(std::vector<double> v);

  std::size_t size() const { return values.size(); }
  bool is_observed(std::size_t i) const { return observed[i] != 0; }
  std::size_t observed_count() const;

  void validate() const;
};

}  // namespace sspred
