#include "sspred/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sspred/error.hpp"

namespace sspred {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ScanSetup {
  std::size_t n = 0;
  std::size_t n_origins = 0;
  std::size_t first_origin = 0;
};

ScanSetup checked_setup(const FilterRun& run, const Series& y, std::size_t max_lead,
                        std::size_t burn_in) {
  ScanSetup s;
  s.n = y.size();
  if (run.size() != s.n)
    throw Error(ErrorCode::dim_mismatch, "horizon scan: filter run does not match series");
  if (max_lead == 0)
    throw Error(ErrorCode::invalid_argument, "horizon scan: lead must be >= 1");
  if (burn_in == 0)
    throw Error(ErrorCode::invalid_argument, "horizon scan: burn-in must be >= 1");
  if (s.n < burn_in + max_lead)
    throw Error(ErrorCode::insufficient_data, "horizon scan: series too short for lead");
  s.first_origin = burn_in;
  s.n_origins = s.n - max_lead - burn_in + 1;
  return s;
}

// Per-thread workspace for the lead recursion.
struct Workspace {
  std::vector<double> mean, vscratch;
  Matrix cov, mscratch;
};

}  // namespace

LeadScan scan_lead(const StateSpaceModel& model, const FilterRun& run, const Series& y,
                   std::size_t p, std::size_t burn_in, ExecMode exec) {
  const ScanSetup setup = checked_setup(run, y, p, burn_in);
  const Matrix gqgt = model.gqgt();
  const std::vector<double> h = model.h_row();

  LeadScan out;
  out.first_origin = setup.first_origin;
  out.err.assign(setup.n_origins, kNaN);
  out.dvar.assign(setup.n_origins, 0.0);
  out.valid.assign(setup.n_origins, 0);

  const bool par = exec == ExecMode::parallel;
#pragma omp parallel if (par)
  {
    Workspace w;
#pragma omp for schedule(static)
    for (long long oi = 0; oi < static_cast<long long>(setup.n_origins); ++oi) {
      const std::size_t o = static_cast<std::size_t>(oi);
      const std::size_t origin = setup.first_origin + o;  // time index, >= 1
      const FilterState& start = run.filtered[origin - 1];
      w.mean = start.mean;
      w.cov = start.cov;
      for (std::size_t j = 0; j < p; ++j) {
        detail::predict_mean_inplace(model.F, w.mean, w.vscratch);
        detail::predict_cov_inplace(model.F, gqgt, w.cov, w.mscratch);
      }
      double ymean = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) ymean += h[i] * w.mean[i];
      out.dvar[o] = model.R + quad_form(w.cov, h);
      const std::size_t target = origin + p - 1;  // storage index of y_{origin+p}
      if (y.is_observed(target)) {
        out.err[o] = y.values[target] - ymean;
        out.valid[o] = 1;
      }
    }
  }
  return out;
}

VarianceScan scan_variances(const StateSpaceModel& model, const FilterRun& run,
                            const Series& y, std::size_t j_max, std::size_t burn_in,
                            ExecMode exec) {
  const ScanSetup setup = checked_setup(run, y, j_max, burn_in);
  // Origins run all the way to N-1; leads beyond the end of the series stay NaN.
  const std::size_t n_origins = setup.n_origins + (j_max - 1);
  const Matrix gqgt = model.gqgt();
  const std::vector<double> h = model.h_row();

  VarianceScan out;
  out.first_origin = setup.first_origin;
  out.j_max = j_max;
  out.errors_sq.assign(n_origins * j_max, kNaN);

  const bool par = exec == ExecMode::parallel;
#pragma omp parallel if (par)
  {
    Workspace w;
#pragma omp for schedule(static)
    for (long long oi = 0; oi < static_cast<long long>(n_origins); ++oi) {
      const std::size_t o = static_cast<std::size_t>(oi);
      const std::size_t origin = setup.first_origin + o;
      const std::size_t lead_cap = std::min(j_max, setup.n - origin);
      const FilterState& start = run.filtered[origin - 1];
      w.mean = start.mean;
      w.cov = start.cov;
      for (std::size_t j = 1; j <= lead_cap; ++j) {
        detail::predict_mean_inplace(model.F, w.mean, w.vscratch);
        detail::predict_cov_inplace(model.F, gqgt, w.cov, w.mscratch);
        const std::size_t target = origin + j - 1;
        if (!y.is_observed(target)) continue;
        double ymean = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) ymean += h[i] * w.mean[i];
        const double e = y.values[target] - ymean;
        out.errors_sq[o * j_max + (j - 1)] = e * e;
      }
    }
  }
  return out;
}

}  // namespace sspred
