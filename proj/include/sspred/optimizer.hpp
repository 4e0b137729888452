#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sspred/criteria.hpp"
#include "sspred/models.hpp"
#include "sspred/series.hpp"

namespace sspred {

/// Bijection between an unconstrained vector and valid hyperparameters with
/// sigma_sq = 1: one log-variance-ratio coordinate per active component,
/// then one atanh-scaled coordinate per AR partial autocorrelation.
struct ParamTransform {
  bool has_tau1 = false;
  bool has_tau2 = false;
  bool has_tau3 = false;
  std::size_t n_pacs = 0;

  static ParamTransform for_spec(const ModelSpec& spec);

  std::size_t dims() const {
    return std::size_t(has_tau1) + std::size_t(has_tau2) + std::size_t(has_tau3) + n_pacs;
  }

  HyperParams forward(const std::vector<double>& v) const;
  std::vector<double> inverse(const HyperParams& theta) const;
};

struct NelderMeadOptions {
  double f_tol = 1e-8;
  double x_tol = 1e-8;
  std::size_t max_iter = 2000;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<std::pair<std::vector<double>, double>> trace;  // best vertex per iteration
};

/// Derivative-free maximization by the reflect/expand/contract/shrink
/// simplex method with coefficients (1, 2, 0.5, 0.5). Trial points where f
/// throws or returns NaN are valued at -infinity, so the simplex retreats
/// from pathological regions. Terminates when the simplex value spread
/// falls below f_tol, its diameter below x_tol, or at max_iter.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start, const NelderMeadOptions& opts,
                             bool record_trace = false);

struct FitOptions {
  NelderMeadOptions nm;
  std::uint64_t seed = 1;
  std::size_t multistart = 0;            // 0 = auto: 5 starts when m3 > 0, else 1
  bool record_trace = false;
  std::vector<std::uint8_t> fixed;       // optional per-coordinate fix mask
  ExecMode exec = ExecMode::parallel;
};

struct FitResult {
  HyperParams theta_hat;       // raw-unit variances, sigma_sq from profiling
  CriterionValue criterion;    // evaluated at theta_hat's scaled form
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<std::pair<std::vector<double>, double>> trace;
};

/// Fit the structural model by maximizing the configured criterion over the
/// transformed hyperparameters. Deterministic: the default start is the
/// origin (all ratios 1, all PACs 0) and any additional multistart points
/// are seeded perturbations of it.
FitResult fit(const ModelSpec& spec, const Series& y, const CriterionConfig& cfg,
              const FitOptions& opts = {});

}  // namespace sspred
