#include "sspred/reference.hpp"

#include <cmath>
#include <limits>

#include "sspred/error.hpp"

namespace sspred::reference {

std::vector<double> horizon_error_variances(const StateSpaceModel& model, const Series& y,
                                            std::size_t j_max, std::size_t burn_in) {
  const std::size_t burn = burn_in == 0 ? model.state_dim() : burn_in;
  if (y.size() <= j_max + burn)
    throw Error(ErrorCode::insufficient_data,
                "reference horizon variances: series too short");
  const FilterRun run = run_filter(model, y);
  const std::size_t n = y.size();

  std::vector<double> out(j_max, 0.0);
  for (std::size_t j = 1; j <= j_max; ++j) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t origin = burn; origin + j <= n; ++origin) {
      if (!y.is_observed(origin + j - 1)) continue;
      const HorizonPrediction pred = predict_horizon(model, run.filtered[origin - 1], j);
      const double e = y.values[origin + j - 1] - pred.obs_mean[j - 1];
      sum += e * e;
      ++count;
    }
    if (count == 0)
      throw Error(ErrorCode::insufficient_data,
                  "reference horizon variances: no valid targets at lead " +
                      std::to_string(j));
    out[j - 1] = sum / static_cast<double>(count);
  }
  return out;
}

LeadErrors lead_errors(const StateSpaceModel& model, const Series& y, std::size_t p,
                       std::size_t burn_in) {
  const std::size_t burn = burn_in == 0 ? model.state_dim() : burn_in;
  if (y.size() <= p + burn)
    throw Error(ErrorCode::insufficient_data, "reference lead errors: series too short");
  const FilterRun run = run_filter(model, y);
  const std::size_t n_origins = y.size() - p - burn + 1;

  LeadErrors out;
  out.err.assign(n_origins, std::numeric_limits<double>::quiet_NaN());
  out.dvar.assign(n_origins, 0.0);
  out.valid.assign(n_origins, 0);
  for (std::size_t o = 0; o < n_origins; ++o) {
    const std::size_t origin = burn + o;
    const HorizonPrediction pred = predict_horizon(model, run.filtered[origin - 1], p);
    out.dvar[o] = pred.obs_var[p - 1];
    if (y.is_observed(origin + p - 1)) {
      out.err[o] = y.values[origin + p - 1] - pred.obs_mean[p - 1];
      out.valid[o] = 1;
    }
  }
  return out;
}

}  // namespace sspred::reference
