#include "sspred/criteria.hpp"

#include <cmath>

#include "sspred/error.hpp"

namespace sspred {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

}  // namespace

const char* variant_name(CriterionVariant v) noexcept {
  switch (v) {
    case CriterionVariant::standard:     return "standard";
    case CriterionVariant::literal:      return "literal";
    case CriterionVariant::concentrated: return "concentrated";
  }
  return "?";
}

double concentrated_value(double sigma_w_sq, double sum_log_d, std::size_t n_terms) {
  const double n = static_cast<double>(n_terms);
  return -0.5 * (n * (kLog2Pi + std::log(sigma_w_sq)) + sum_log_d + n);
}

double literal_value(double sigma_p_sq, double sum_log_d, std::size_t n_terms) {
  const double n = static_cast<double>(n_terms);
  return -(n * (kLog2Pi + std::log(sigma_p_sq) + 1.0) + sum_log_d) / n;
}

double loglik_exact(const StateSpaceModel& model, const Series& y, std::size_t burn_in) {
  const FilterRun run = run_filter(model, y);
  double sum_log_d = 0.0, sum_w = 0.0;
  std::size_t n_terms = 0;
  for (std::size_t i = burn_in; i < run.size(); ++i) {
    if (!run.observed[i]) continue;
    sum_log_d += std::log(run.innovation_var[i]);
    sum_w += run.innovation[i] * run.innovation[i] / run.innovation_var[i];
    ++n_terms;
  }
  if (n_terms == 0)
    throw Error(ErrorCode::insufficient_data, "loglik: no likelihood terms after burn-in");
  return -0.5 * (static_cast<double>(n_terms) * kLog2Pi + sum_log_d + sum_w);
}

CriterionValue loglik_concentrated(const StateSpaceModel& model, const Series& y,
                                   std::size_t burn_in) {
  const FilterRun run = run_filter(model, y);
  double sum_log_d = 0.0, sum_w = 0.0, sum_sq = 0.0;
  std::size_t n_terms = 0;
  // Innovation y_t - y_{t|t-1} has prediction origin t-1; keep origins >= burn_in.
  for (std::size_t i = burn_in; i < run.size(); ++i) {
    if (!run.observed[i]) continue;
    const double eps = run.innovation[i];
    const double d = run.innovation_var[i];
    sum_log_d += std::log(d);
    sum_w += eps * eps / d;
    sum_sq += eps * eps;
    ++n_terms;
  }
  if (n_terms == 0)
    throw Error(ErrorCode::insufficient_data, "loglik: no likelihood terms after burn-in");

  CriterionValue out;
  out.n_terms = n_terms;
  out.sigma_sq_hat = sum_w / static_cast<double>(n_terms);
  out.sigma_p_sq_hat = sum_sq / static_cast<double>(n_terms);
  if (!(out.sigma_sq_hat > 0.0))
    throw Error(ErrorCode::degenerate_variance,
                "loglik: degenerate zero-variance prediction errors");
  out.value = concentrated_value(out.sigma_sq_hat, sum_log_d, n_terms);
  return out;
}

CriterionValue loglik_horizon(const StateSpaceModel& model, const Series& y,
                              const CriterionConfig& cfg, ExecMode exec) {
  if (cfg.p == 0) throw Error(ErrorCode::invalid_argument, "criterion: p must be >= 1");
  const std::size_t burn = cfg.resolved_burn_in(model.state_dim());
  if (cfg.variant == CriterionVariant::standard)
    return loglik_concentrated(model, y, burn);

  if (y.size() <= cfg.p + burn)
    throw Error(ErrorCode::insufficient_data,
                "criterion: series too short for horizon p plus burn-in");
  const FilterRun run = run_filter(model, y);
  const LeadScan scan = scan_lead(model, run, y, cfg.p, burn, exec);

  double sum_log_d = 0.0, sum_w = 0.0, sum_sq = 0.0;
  std::size_t n_terms = 0;
  for (std::size_t o = 0; o < scan.err.size(); ++o) {
    if (!scan.valid[o]) continue;
    const double eps = scan.err[o];
    const double d = scan.dvar[o];
    if (!(d > 0.0))
      throw Error(ErrorCode::degenerate_variance,
                  "criterion: p-step prediction variance not positive");
    sum_log_d += std::log(d);
    sum_w += eps * eps / d;
    sum_sq += eps * eps;
    ++n_terms;
  }
  if (n_terms == 0)
    throw Error(ErrorCode::insufficient_data, "criterion: no usable p-step errors");

  CriterionValue out;
  out.n_terms = n_terms;
  out.sigma_sq_hat = sum_w / static_cast<double>(n_terms);
  out.sigma_p_sq_hat = sum_sq / static_cast<double>(n_terms);
  if (!(out.sigma_sq_hat > 0.0) || !(out.sigma_p_sq_hat > 0.0))
    throw Error(ErrorCode::degenerate_variance,
                "criterion: degenerate zero-variance prediction errors");
  out.value = cfg.variant == CriterionVariant::literal
                  ? literal_value(out.sigma_p_sq_hat, sum_log_d, n_terms)
                  : concentrated_value(out.sigma_sq_hat, sum_log_d, n_terms);
  return out;
}

std::vector<double> horizon_error_variances(const StateSpaceModel& model, const Series& y,
                                            std::size_t j_max, std::size_t burn_in,
                                            ExecMode exec) {
  if (j_max == 0) throw Error(ErrorCode::invalid_argument, "horizon variances: j_max must be >= 1");
  const std::size_t burn = burn_in == 0 ? model.state_dim() : burn_in;
  if (y.size() <= j_max + burn)
    throw Error(ErrorCode::insufficient_data,
                "horizon variances: series too short for j_max plus burn-in");
  const FilterRun run = run_filter(model, y);
  const VarianceScan scan = scan_variances(model, run, y, j_max, burn, exec);

  std::vector<double> out(j_max, 0.0);
  const std::size_t n_origins = scan.origins();
  for (std::size_t j = 1; j <= j_max; ++j) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t o = 0; o < n_origins; ++o) {
      const double e2 = scan.at(o, j);
      if (std::isnan(e2)) continue;
      sum += e2;
      ++count;
    }
    if (count == 0)
      throw Error(ErrorCode::insufficient_data,
                  "horizon variances: no valid targets at lead " + std::to_string(j));
    out[j - 1] = sum / static_cast<double>(count);
  }
  return out;
}

}  // namespace sspred
