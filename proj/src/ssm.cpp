#include "sspred/ssm.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "sspred/error.hpp"

namespace sspred {

std::vector<double> StateSpaceModel::h_row() const {
  std::vector<double> h(H.cols());
  for (std::size_t j = 0; j < H.cols(); ++j) h[j] = H(0, j);
  return h;
}

Matrix StateSpaceModel::gqgt() const {
  return mult_abt(G * Q, G);
}

void StateSpaceModel::validate() const {
  const std::size_t k = F.rows();
  const std::size_t m = G.cols();
  if (F.cols() != k || k == 0)
    throw Error(ErrorCode::dim_mismatch, "model: F must be square and nonempty");
  if (G.rows() != k) throw Error(ErrorCode::dim_mismatch, "model: G row count != state dim");
  if (H.rows() != 1 || H.cols() != k)
    throw Error(ErrorCode::dim_mismatch, "model: H must be 1 x k");
  if (Q.rows() != m || Q.cols() != m)
    throw Error(ErrorCode::dim_mismatch, "model: Q must be m x m");
  if (x0.size() != k) throw Error(ErrorCode::dim_mismatch, "model: x0 length != state dim");
  if (V0.rows() != k || V0.cols() != k)
    throw Error(ErrorCode::dim_mismatch, "model: V0 must be k x k");
  if (!(R >= 0.0)) throw Error(ErrorCode::invalid_argument, "model: R must be >= 0");
  if (!all_finite(F) || !all_finite(G) || !all_finite(H) || !all_finite(Q) ||
      !all_finite(V0) || !all_finite(x0) || !std::isfinite(R))
    throw Error(ErrorCode::nonfinite_value, "model: non-finite entry");
  for (std::size_t i = 0; i < m; ++i) {
    if (Q(i, i) < 0.0) throw Error(ErrorCode::invalid_argument, "model: Q diagonal < 0");
    for (std::size_t j = 0; j < m; ++j)
      if (std::abs(Q(i, j) - Q(j, i)) > 1e-12 * (1.0 + std::abs(Q(i, j))))
        throw Error(ErrorCode::invalid_argument, "model: Q not symmetric");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (V0(i, i) < 0.0) throw Error(ErrorCode::invalid_argument, "model: V0 diagonal < 0");
    for (std::size_t j = 0; j < k; ++j)
      if (std::abs(V0(i, j) - V0(j, i)) > 1e-12 * (1.0 + std::abs(V0(i, j))))
        throw Error(ErrorCode::invalid_argument, "model: V0 not symmetric");
  }
}

FilterState predict_one(const StateSpaceModel& model, const FilterState& s) {
  if (s.mean.size() != model.state_dim() || s.cov.rows() != model.state_dim())
    throw Error(ErrorCode::dim_mismatch, "predict_one: state dimension mismatch");
  if (s.cond > s.time)
    throw Error(ErrorCode::invalid_argument, "predict_one: cond index ahead of time index");
  FilterState out = s;
  std::vector<double> vscratch;
  Matrix mscratch;
  const Matrix gqgt = model.gqgt();
  detail::predict_mean_inplace(model.F, out.mean, vscratch);
  detail::predict_cov_inplace(model.F, gqgt, out.cov, mscratch);
  out.time = s.time + 1;
  return out;
}

namespace {

// Shared measurement update. hv receives H * cov as scratch.
FilterUpdate filter_step_impl(const StateSpaceModel& model, const FilterState& s, double y,
                              std::vector<double>& hv) {
  const std::size_t k = model.state_dim();
  hv.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += model.H(0, i) * s.cov(i, j);
    hv[j] = acc;
  }
  double d = model.R;
  for (std::size_t j = 0; j < k; ++j) d += hv[j] * model.H(0, j);
  if (!(d > 0.0) || !std::isfinite(d))
    throw Error(ErrorCode::degenerate_variance,
                "filter: one-step prediction variance not positive");

  double ymean = 0.0;
  for (std::size_t j = 0; j < k; ++j) ymean += model.H(0, j) * s.mean[j];
  const double eps = y - ymean;

  FilterUpdate out;
  out.state = s;
  out.innovation = eps;
  out.innovation_var = d;
  // K = V H^T / d; by symmetry V H^T equals (H V)^T, already in hv.
  for (std::size_t i = 0; i < k; ++i) out.state.mean[i] = s.mean[i] + hv[i] / d * eps;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.state.cov(i, j) = s.cov(i, j) - hv[i] / d * hv[j];
  symmetrize(out.state.cov);
  out.state.cond = out.state.time;
  return out;
}

}  // namespace

FilterUpdate filter_step(const StateSpaceModel& model, const FilterState& s, double y) {
  if (s.mean.size() != model.state_dim())
    throw Error(ErrorCode::dim_mismatch, "filter_step: state dimension mismatch");
  if (s.time != s.cond + 1)
    throw Error(ErrorCode::invalid_argument, "filter_step: state is not one-step-predicted");
  if (!std::isfinite(y))
    throw Error(ErrorCode::nonfinite_value, "filter_step: observation not finite");
  std::vector<double> hv;
  return filter_step_impl(model, s, y, hv);
}

FilterRun run_filter(const StateSpaceModel& model, const Series& y) {
  model.validate();
  y.validate();
  const std::size_t n = y.size();
  const Matrix gqgt = model.gqgt();
  const std::vector<double> h = model.h_row();

  FilterRun run;
  run.predicted.reserve(n);
  run.filtered.reserve(n);
  run.innovation.assign(n, std::numeric_limits<double>::quiet_NaN());
  run.innovation_var.assign(n, 0.0);
  run.observed = y.observed;

  FilterState state;
  state.mean = model.x0;
  state.cov = model.V0;
  state.time = 0;
  state.cond = 0;

  std::vector<double> vscratch, hv;
  Matrix mscratch;
  for (std::size_t i = 0; i < n; ++i) {
    detail::predict_mean_inplace(model.F, state.mean, vscratch);
    detail::predict_cov_inplace(model.F, gqgt, state.cov, mscratch);
    state.time = i + 1;
    run.predicted.push_back(state);

    if (y.is_observed(i)) {
      FilterUpdate upd = filter_step_impl(model, state, y.values[i], hv);
      run.innovation[i] = upd.innovation;
      run.innovation_var[i] = upd.innovation_var;
      state = std::move(upd.state);
    } else {
      double d = model.R + quad_form(state.cov, h);
      if (!(d > 0.0) || !std::isfinite(d))
        throw Error(ErrorCode::degenerate_variance,
                    "filter: one-step prediction variance not positive");
      run.innovation_var[i] = d;
      state.cond = state.time;
    }
    if (!all_finite(state.mean) || !all_finite(state.cov))
      throw Error(ErrorCode::nonfinite_value, "filter: state diverged to non-finite values");
    run.filtered.push_back(state);
  }
  return run;
}

HorizonPrediction predict_horizon(const StateSpaceModel& model, const FilterState& s,
                                  std::size_t p) {
  if (p == 0) throw Error(ErrorCode::invalid_argument, "predict_horizon: p must be >= 1");
  if (s.time != s.cond)
    throw Error(ErrorCode::invalid_argument, "predict_horizon: state is not filtered");

  HorizonPrediction out;
  out.states.reserve(p);
  out.obs_mean.reserve(p);
  out.obs_var.reserve(p);

  const Matrix gqgt = model.gqgt();
  const std::vector<double> h = model.h_row();
  FilterState cur = s;
  std::vector<double> vscratch;
  Matrix mscratch;
  for (std::size_t j = 1; j <= p; ++j) {
    detail::predict_mean_inplace(model.F, cur.mean, vscratch);
    detail::predict_cov_inplace(model.F, gqgt, cur.cov, mscratch);
    cur.time = s.time + j;
    double mean = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) mean += h[i] * cur.mean[i];
    const double var = model.R + quad_form(cur.cov, h);
    if (!(var > 0.0))
      throw Error(ErrorCode::degenerate_variance,
                  "predict_horizon: observation variance not positive");
    out.states.push_back(cur);
    out.obs_mean.push_back(mean);
    out.obs_var.push_back(var);
  }
  return out;
}

SmootherResult run_smoother(const StateSpaceModel& model, const FilterRun& run) {
  const std::size_t n = run.size();
  if (n == 0) throw Error(ErrorCode::insufficient_data, "smoother: empty filter run");

  SmootherResult out;
  out.states.resize(n);
  out.states[n - 1] = run.filtered[n - 1];
  out.states[n - 1].cond = n;

  for (std::size_t i = n - 1; i-- > 0;) {
    const FilterState& filt = run.filtered[i];       // x_{t|t}, t = i+1
    const FilterState& pred = run.predicted[i + 1];  // x_{t+1|t}
    const FilterState& next = out.states[i + 1];     // x_{t+1|N}

    // A = V_{t|t} F^T V_{t+1|t}^{-1}
    Matrix a;
    try {
      a = transpose(spd_solve(pred.cov, model.F * filt.cov));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_spd) throw;
      out.used_pseudo_inverse = true;
      a = mult_abt(filt.cov, model.F) * sym_pseudo_inverse(pred.cov, 1e-12);
    }

    FilterState sm = filt;
    std::vector<double> dmean(filt.mean.size());
    for (std::size_t j = 0; j < dmean.size(); ++j) dmean[j] = next.mean[j] - pred.mean[j];
    const std::vector<double> corr = a * dmean;
    for (std::size_t j = 0; j < sm.mean.size(); ++j) sm.mean[j] += corr[j];
    sm.cov = filt.cov + mult_abt(a * (next.cov - pred.cov), a);
    symmetrize(sm.cov);
    sm.cond = n;
    out.states[i] = std::move(sm);
  }
  return out;
}

}  // namespace sspred
