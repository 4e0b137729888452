#pragma once

#include <cstddef>
#include <vector>

#include "sspred/linalg.hpp"
#include "sspred/series.hpp"

namespace sspred {

/// Time-invariant linear Gaussian state-space model
///
///   x_n = F x_{n-1} + G v_n,   v_n ~ N(0, Q)
///   y_n = H x_n + w_n,         w_n ~ N(0, R)
///
/// with initial state x_0 ~ N(x0, V0). The observation is univariate;
/// H is stored as a 1 x k matrix.
struct StateSpaceModel {
  Matrix F;                 // k x k transition
  Matrix G;                 // k x m noise loading
  Matrix H;                 // 1 x k observation row
  Matrix Q;                 // m x m system-noise covariance
  double R = 0.0;           // observation-noise variance
  std::vector<double> x0;   // initial state mean
  Matrix V0;                // initial state covariance

  std::size_t state_dim() const { return F.rows(); }
  std::size_t noise_dim() const { return G.cols(); }

  /// Observation row as a plain vector (length k).
  std::vector<double> h_row() const;

  /// G Q G^T, the state-noise contribution of one prediction step.
  Matrix gqgt() const;

  void validate() const;
};

/// Conditional state moments (x_{time|cond}, V_{time|cond}).
struct FilterState {
  std::vector<double> mean;
  Matrix cov;
  std::size_t time = 0;
  std::size_t cond = 0;
};

/// Output of a full filter pass over y_1..y_N. predicted[i] holds
/// x_{i+1|i}, filtered[i] holds x_{i+1|i+1}. innovation[i] is
/// y_{i+1} - H x_{i+1|i} where y_{i+1} is observed (NaN otherwise) and
/// innovation_var[i] = H V_{i+1|i} H^T + R at every step.
struct FilterRun {
  std::vector<FilterState> predicted;
  std::vector<FilterState> filtered;
  std::vector<double> innovation;
  std::vector<double> innovation_var;
  std::vector<std::uint8_t> observed;

  std::size_t size() const { return predicted.size(); }
};

/// Increasing-horizon prediction from a filtered state at time n:
/// states[j-1] = (x_{n+j|n}, V_{n+j|n}), obs_mean[j-1] = H x_{n+j|n},
/// obs_var[j-1] = H V_{n+j|n} H^T + R, for j = 1..p.
struct HorizonPrediction {
  std::vector<FilterState> states;
  std::vector<double> obs_mean;
  std::vector<double> obs_var;
};

struct FilterUpdate {
  FilterState state;
  double innovation = 0.0;
  double innovation_var = 0.0;
};

/// One prediction step: mean <- F mean, cov <- F cov F^T + G Q G^T.
/// Accepts any state with cond <= time and increments time.
FilterState predict_one(const StateSpaceModel& model, const FilterState& s);

/// One measurement update on a one-step-predicted state (time == cond+1):
/// K = V H^T / d with d = H V H^T + R, mean <- mean + K (y - H mean),
/// cov <- (I - K H) cov. Throws E_DEGENERATE_VARIANCE when d <= 0.
FilterUpdate filter_step(const StateSpaceModel& model, const FilterState& s, double y);

/// Kalman filter pass over the whole series. Missing observations skip the
/// measurement update (filtered = predicted); innovations are recorded only
/// at observed points.
FilterRun run_filter(const StateSpaceModel& model, const Series& y);

/// Iterated prediction for leads 1..p from a filtered state (cond == time).
HorizonPrediction predict_horizon(const StateSpaceModel& model, const FilterState& s,
                                  std::size_t p);

struct SmootherResult {
  std::vector<FilterState> states;   // x_{n|N}, V_{n|N} for n = 1..N
  bool used_pseudo_inverse = false;  // a predicted covariance was singular
};

/// Fixed-interval smoother (backward recursion over a completed filter run).
/// A singular predicted covariance falls back to a symmetric pseudo-inverse
/// with relative tolerance 1e-12 and sets the flag.
SmootherResult run_smoother(const StateSpaceModel& model, const FilterRun& run);

}  // namespace sspred
