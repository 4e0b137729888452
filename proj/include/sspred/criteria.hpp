#pragma once

#include <cstddef>
#include <vector>

#include "sspred/horizon.hpp"
#include "sspred/ssm.hpp"

namespace sspred {

/// Fitting-criterion variants. All are evaluated on the scaled model
/// (R = 1, component variances as ratios against the observation noise),
/// which leaves the Kalman gain and state estimates unchanged while the
/// observation variance is profiled out.
///
///   standard      one-step concentrated log-likelihood
///                 -1/2 (N' log 2*pi*s2 + sum log d~ + N') with the
///                 innovation-weighted profile s2 = mean(eps^2 / d~);
///                 the horizon p is ignored.
///   literal       p-step criterion
///                 -1/N' { N' (log 2*pi*s2_p + 1) + sum log d~_{n+p|n} }
///                 with the plain p-step error variance s2_p = mean(eps^2).
///   concentrated  the standard concentration pattern applied at lead p:
///                 -1/2 (N' log 2*pi*s2_w + sum log d~_{n+p|n} + N') with
///                 s2_w = mean(eps^2 / d~). Reduces to `standard` at p = 1.
enum class CriterionVariant { standard, literal, concentrated };

const char* variant_name(CriterionVariant v) noexcept;

struct CriterionConfig {
  std::size_t p = 1;
  CriterionVariant variant = CriterionVariant::literal;
  std::size_t burn_in = 0;   // 0 = auto (state dimension)

  /// Burn-in actually applied for a model with state dimension k:
  /// prediction origins start at max(burn_in, 1), defaulting to k.
  std::size_t resolved_burn_in(std::size_t state_dim) const {
    return burn_in == 0 ? state_dim : burn_in;
  }
};

struct CriterionValue {
  double value = 0.0;          // log-likelihood scale, larger is better
  double sigma_sq_hat = 0.0;   // innovation-weighted observation-variance profile
  double sigma_p_sq_hat = 0.0; // plain mean squared lead-p error, raw data units
  std::size_t n_terms = 0;
};

/// Pure assembly formulas, shared by the implementations and their tests.
double concentrated_value(double sigma_w_sq, double sum_log_d, std::size_t n_terms);
double literal_value(double sigma_p_sq, double sum_log_d, std::size_t n_terms);

/// Exact innovations-form log-likelihood of the model as given (no
/// profiling): -1/2 { N' log 2 pi + sum log d + sum eps^2/d } over
/// prediction origins >= burn_in (burn_in = 0 uses every term).
double loglik_exact(const StateSpaceModel& model, const Series& y, std::size_t burn_in = 0);

/// Concentrated log-likelihood with the observation variance profiled out.
/// The model is expected in the scaled metric (R = 1); any positive R works
/// and the value is invariant under joint scaling of (Q, R, V0).
/// Terms are innovations whose prediction origin is >= burn_in, i.e. the
/// first burn_in observations only warm the filter.
CriterionValue loglik_concentrated(const StateSpaceModel& model, const Series& y,
                                   std::size_t burn_in);

/// p-step predictive criterion over rolling origins n = burn_in .. N-p.
/// See CriterionVariant for the three assembled forms.
CriterionValue loglik_horizon(const StateSpaceModel& model, const Series& y,
                              const CriterionConfig& cfg,
                              ExecMode exec = ExecMode::parallel);

/// Increasing-horizon prediction error variances: for each j = 1..j_max,
/// the mean of (y_{n+j} - y_{n+j|n})^2 over origins n = burn_in..N-j.
/// One filter pass with a rolling predictor; results are in the data's
/// units regardless of the model's scaling.
std::vector<double> horizon_error_variances(const StateSpaceModel& model, const Series& y,
                                            std::size_t j_max, std::size_t burn_in,
                                            ExecMode exec = ExecMode::parallel);

}  // namespace sspred
