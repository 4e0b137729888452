#pragma once

#include <cstddef>
#include <vector>

#include "sspred/ssm.hpp"

namespace sspred::reference {

/// Naive serial counterparts of the rolling horizon kernels, built step by
/// step on the public predictor. Kept as the reference the optimized scans
/// are tested and benchmarked against: one full predict_horizon call per
/// (origin, lead) pass instead of a single rolling pass.
std::vector<double> horizon_error_variances(const StateSpaceModel& model, const Series& y,
                                            std::size_t j_max, std::size_t burn_in);

/// Lead-p errors and predictive variances per origin, same layout as
/// LeadScan (origins burn_in .. N-p).
struct LeadErrors {
  std::vector<double> err;
  std::vector<double> dvar;
  std::vector<std::uint8_t> valid;
};
LeadErrors lead_errors(const StateSpaceModel& model, const Series& y, std::size_t p,
                       std::size_t burn_in);

}  // namespace sspred::reference
