#include "sspred/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "sspred/error.hpp"

namespace sspred {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPacCap = 1.0 - 1e-12;

}  // namespace

ParamTransform ParamTransform::for_spec(const ModelSpec& spec) {
  spec.validate();
  ParamTransform t;
  t.has_tau1 = spec.m1 > 0;
  t.has_tau2 = spec.m2 > 0;
  t.has_tau3 = spec.m3 > 0;
  t.n_pacs = static_cast<std::size_t>(spec.m3);
  return t;
}

HyperParams ParamTransform::forward(const std::vector<double>& v) const {
  if (v.size() != dims())
    throw Error(ErrorCode::dim_mismatch, "transform: vector length mismatch");
  if (!all_finite(v))
    throw Error(ErrorCode::nonfinite_value, "transform: non-finite coordinate");
  HyperParams theta;
  theta.sigma_sq = 1.0;
  std::size_t i = 0;
  if (has_tau1) theta.tau1_sq = std::exp(v[i++]);
  if (has_tau2) theta.tau2_sq = std::exp(v[i++]);
  if (has_tau3) theta.tau3_sq = std::exp(v[i++]);
  theta.ar_pacs.resize(n_pacs);
  for (std::size_t j = 0; j < n_pacs; ++j)
    theta.ar_pacs[j] = std::clamp(std::tanh(v[i++]), -kPacCap, kPacCap);
  return theta;
}

std::vector<double> ParamTransform::inverse(const HyperParams& theta) const {
  std::vector<double> v;
  v.reserve(dims());
  if (has_tau1) v.push_back(std::log(theta.tau1_sq / theta.sigma_sq));
  if (has_tau2) v.push_back(std::log(theta.tau2_sq / theta.sigma_sq));
  if (has_tau3) v.push_back(std::log(theta.tau3_sq / theta.sigma_sq));
  if (theta.ar_pacs.size() != n_pacs)
    throw Error(ErrorCode::dim_mismatch, "transform: PAC count mismatch");
  for (double p : theta.ar_pacs) v.push_back(std::atanh(p));
  return v;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start, const NelderMeadOptions& opts,
                             bool record_trace) {
  if (!all_finite(start))
    throw Error(ErrorCode::nonfinite_value, "nelder_mead: start point not finite");
  const std::size_t dim = start.size();

  NelderMeadResult res;
  std::size_t evals = 0;
  auto safe_f = [&](const std::vector<double>& x) -> double {
    ++evals;
    double v;
    try {
      v = f(x);
    } catch (const Error&) {
      return kNegInf;
    }
    return std::isnan(v) ? kNegInf : v;
  };

  if (dim == 0) {
    res.x = start;
    res.value = safe_f(start);
    res.evaluations = evals;
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> xs(dim + 1, start);
  std::vector<double> fs(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) xs[i + 1][i] += opts.initial_step;
  for (std::size_t i = 0; i <= dim; ++i) fs[i] = safe_f(xs[i]);

  auto order = [&]() {
    // indices of best, second-worst and worst vertices (maximization)
    std::size_t best = 0, worst = 0;
    for (std::size_t i = 1; i <= dim; ++i) {
      if (fs[i] > fs[best]) best = i;
      if (fs[i] < fs[worst]) worst = i;
    }
    std::size_t second = best;
    for (std::size_t i = 0; i <= dim; ++i)
      if (i != worst && (second == worst || fs[i] < fs[second])) second = i;
    return std::array<std::size_t, 3>{best, second, worst};
  };

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::size_t iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const auto [best, second, worst] = order();
    if (record_trace) res.trace.emplace_back(xs[best], fs[best]);

    const double spread = fs[best] - fs[worst];
    double diameter = 0.0;
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        diameter = std::max(diameter, std::abs(xs[i][j] - xs[best][j]));
    if (spread < opts.f_tol || diameter < opts.x_tol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += xs[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (centroid[j] - xs[worst][j]);
      return x;
    };

    const std::vector<double> xr = along(alpha);
    const double fr = safe_f(xr);
    if (fr > fs[best]) {
      const std::vector<double> xe = along(gamma);
      const double fe = safe_f(xe);
      if (fe > fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr > fs[second]) {
      xs[worst] = xr;
      fs[worst] = fr;
      continue;
    }
    // contraction: outside when the reflection improved on the worst vertex
    const bool outside = fr > fs[worst];
    const std::vector<double> xc = along(outside ? rho : -rho);
    const double fc = safe_f(xc);
    if ((outside && fc >= fr) || (!outside && fc > fs[worst])) {
      xs[worst] = xc;
      fs[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j)
        xs[i][j] = xs[best][j] + sigma * (xs[i][j] - xs[best][j]);
      fs[i] = safe_f(xs[i]);
    }
  }

  const auto [best, second, worst] = order();
  (void)second;
  (void)worst;
  res.x = xs[best];
  res.value = fs[best];
  res.iterations = iter;
  res.evaluations = evals;
  return res;
}

namespace {

CriterionValue evaluate_criterion(const ModelSpec& spec, const HyperParams& theta,
                                  const Series& y, const CriterionConfig& cfg,
                                  ExecMode exec) {
  ModelSpec s = spec;
  s.theta = theta;
  const StateSpaceModel model = compose(s);
  if (cfg.variant == CriterionVariant::standard)
    return loglik_concentrated(model, y, cfg.resolved_burn_in(model.state_dim()));
  return loglik_horizon(model, y, cfg, exec);
}

}  // namespace

FitResult fit(const ModelSpec& spec, const Series& y, const CriterionConfig& cfg,
              const FitOptions& opts) {
  spec.validate();
  y.validate();
  const ParamTransform transform = ParamTransform::for_spec(spec);
  const std::size_t dim = transform.dims();

  if (!opts.fixed.empty() && opts.fixed.size() != dim)
    throw Error(ErrorCode::invalid_argument, "fit: fixed mask length mismatch");
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < dim; ++i)
    if (opts.fixed.empty() || !opts.fixed[i]) free_idx.push_back(i);

  const std::vector<double> start(dim, 0.0);
  // A failure at the deterministic start is a hard error, not a -inf vertex.
  evaluate_criterion(spec, transform.forward(start), y, cfg, opts.exec);

  auto objective = [&](const std::vector<double>& free_v) {
    std::vector<double> v = start;
    for (std::size_t i = 0; i < free_idx.size(); ++i) v[free_idx[i]] = free_v[i];
    return evaluate_criterion(spec, transform.forward(v), y, cfg, opts.exec).value;
  };

  const std::size_t n_starts =
      opts.multistart > 0 ? opts.multistart : (spec.m3 > 0 ? 5 : 1);

  NelderMeadResult best_nm;
  bool have_best = false;
  std::size_t total_iters = 0, total_evals = 0;
  std::vector<std::pair<std::vector<double>, double>> trace;
  for (std::size_t s = 0; s < n_starts; ++s) {
    std::vector<double> free_start(free_idx.size(), 0.0);
    if (s > 0) {
      std::mt19937_64 rng(opts.seed * 1000003ULL + s);
      std::uniform_real_distribution<double> u(-1.5, 1.5);
      for (double& x : free_start) x = u(rng);
    }
    NelderMeadResult nm = nelder_mead(objective, free_start, opts.nm, opts.record_trace);
    total_iters += nm.iterations;
    total_evals += nm.evaluations;
    if (opts.record_trace)
      trace.insert(trace.end(), nm.trace.begin(), nm.trace.end());
    if (!have_best || nm.value > best_nm.value) {
      best_nm = std::move(nm);
      have_best = true;
    }
  }

  std::vector<double> v_best = start;
  for (std::size_t i = 0; i < free_idx.size(); ++i) v_best[free_idx[i]] = best_nm.x[i];
  const HyperParams ratios = transform.forward(v_best);
  const CriterionValue cv0 = evaluate_criterion(spec, ratios, y, cfg, opts.exec);
  const double sigma_sq = cv0.sigma_sq_hat;

  FitResult out;
  out.theta_hat = ratios;
  out.theta_hat.tau1_sq = ratios.tau1_sq * sigma_sq;
  out.theta_hat.tau2_sq = ratios.tau2_sq * sigma_sq;
  out.theta_hat.tau3_sq = ratios.tau3_sq * sigma_sq;
  out.theta_hat.sigma_sq = sigma_sq;

  // Final criterion at the exact scaled form recoverable from theta_hat, so
  // re-evaluating at the reported parameters reproduces the reported value.
  HyperParams reeval = out.theta_hat;
  reeval.tau1_sq /= sigma_sq;
  reeval.tau2_sq /= sigma_sq;
  reeval.tau3_sq /= sigma_sq;
  reeval.sigma_sq = 1.0;
  out.criterion = evaluate_criterion(spec, reeval, y, cfg, opts.exec);
  out.iterations = total_iters;
  out.evaluations = total_evals;
  out.converged = best_nm.converged;
  out.trace = std::move(trace);
  return out;
}

}  // namespace sspred
