#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sspred/ssm.hpp"

namespace sspred {

enum class ExecMode { serial, parallel };

/// Lead-p prediction errors over a rolling origin. Origin n (time index,
/// n = burn_in .. N-p) predicts p steps ahead from the filtered state at n;
/// slot o = n - burn_in records the error against y_{n+p} and the predictive
/// variance d_{n+p|n} in the model's metric.
///
/// Origins are mutually independent given the filter pass, so the scan is
/// parallelized over them; every origin writes only its own slot and all
/// reductions happen later in a fixed order, which makes serial and parallel
/// execution bit-identical.
struct LeadScan {
  std::size_t first_origin = 0;
  std::vector<double> err;            // NaN where the target is missing
  std::vector<double> dvar;
  std::vector<std::uint8_t> valid;
};

LeadScan scan_lead(const StateSpaceModel& model, const FilterRun& run, const Series& y,
                   std::size_t p, std::size_t burn_in,
                   ExecMode exec = ExecMode::parallel);

/// Rolling predictor over all leads: one pass that, at every origin,
/// predicts j_max steps ahead and records the squared error per lead.
/// errors_sq is (origins x j_max) row-major; entry (o, j-1) is
/// (y_{n+j} - H x_{n+j|n})^2 for origin n = first_origin + o, or NaN where
/// y_{n+j} is missing or n+j > N.
struct VarianceScan {
  std::size_t first_origin = 0;
  std::size_t j_max = 0;
  std::vector<double> errors_sq;

  double at(std::size_t origin_slot, std::size_t lead) const {
    return errors_sq[origin_slot * j_max + (lead - 1)];
  }
  std::size_t origins() const { return j_max == 0 ? 0 : errors_sq.size() / j_max; }
};

VarianceScan scan_variances(const StateSpaceModel& model, const FilterRun& run,
                            const Series& y, std::size_t j_max, std::size_t burn_in,
                            ExecMode exec = ExecMode::parallel);

}  // namespace sspred
