#include "sspred/sweep.hpp"

#include <cmath>
#include <limits>

#include "sspred/error.hpp"

namespace sspred {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

SweepTable run_sweep(const ModelSpec& spec, const Series& y,
                     const std::vector<std::size_t>& p_values, std::size_t j_max,
                     const CriterionConfig& cfg, const FitOptions& opts, ExecMode exec) {
  spec.validate();
  y.validate();
  if (p_values.empty())
    throw Error(ErrorCode::invalid_argument, "sweep: p list is empty");
  if (j_max == 0) throw Error(ErrorCode::invalid_argument, "sweep: j_max must be >= 1");
  const std::size_t k = static_cast<std::size_t>(spec.state_dim());
  const std::size_t burn = cfg.resolved_burn_in(k);
  if (y.size() <= j_max + burn)
    throw Error(ErrorCode::insufficient_data, "sweep: series too short for j_max plus burn-in");
  for (std::size_t p : p_values) {
    if (p == 0) throw Error(ErrorCode::invalid_argument, "sweep: p must be >= 1");
    if (y.size() <= p + burn)
      throw Error(ErrorCode::insufficient_data, "sweep: series too short for p plus burn-in");
  }

  SweepTable table;
  table.p_values = p_values;
  table.j_max = j_max;
  table.cells = Matrix(j_max, p_values.size(), kNaN);
  table.col_means.assign(p_values.size(), kNaN);
  table.fits.resize(p_values.size());

  const bool par = exec == ExecMode::parallel && p_values.size() > 1;
  // With the columns running in parallel, each fit scans serially; a single
  // column gets the parallel scan instead.
  const ExecMode inner = par ? ExecMode::serial : exec;

#pragma omp parallel for schedule(dynamic, 1) if (par)
  for (long long ci = 0; ci < static_cast<long long>(p_values.size()); ++ci) {
    const std::size_t c = static_cast<std::size_t>(ci);
    CriterionConfig col_cfg = cfg;
    col_cfg.p = p_values[c];
    FitOptions col_opts = opts;
    col_opts.exec = inner;
    SweepTable::FitMeta& meta = table.fits[c];
    try {
      meta.fit = fit(spec, y, col_cfg, col_opts);
      ModelSpec fitted = spec;
      fitted.theta = meta.fit.theta_hat;
      // Evaluate in the scaled metric the fit used; errors, and therefore
      // the variances, are in raw data units either way.
      fitted.theta.tau1_sq /= fitted.theta.sigma_sq;
      fitted.theta.tau2_sq /= fitted.theta.sigma_sq;
      fitted.theta.tau3_sq /= fitted.theta.sigma_sq;
      fitted.theta.sigma_sq = 1.0;
      const std::vector<double> col =
          horizon_error_variances(compose(fitted), y, j_max, burn, inner);
      for (std::size_t j = 0; j < j_max; ++j) table.cells(j, c) = col[j];
      meta.ok = true;
    } catch (const Error& e) {
      meta.ok = false;
      meta.error = std::string(e.token()) + ": " + e.what();
    }
  }

  for (std::size_t c = 0; c < p_values.size(); ++c) {
    if (!table.fits[c].ok) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < j_max; ++j) sum += table.cells(j, c);
    table.col_means[c] = sum / static_cast<double>(j_max);
  }
  return table;
}

Decomposition decompose(const ModelSpec& spec, const HyperParams& theta, const Series& y) {
  ModelSpec s = spec;
  s.theta = theta;
  s.validate();
  const StateSpaceModel model = compose(s);
  const FilterRun run = run_filter(model, y);
  const SmootherResult sm = run_smoother(model, run);

  const std::size_t n = y.size();
  Decomposition d;
  d.used_pseudo_inverse = sm.used_pseudo_inverse;
  d.y = y.values;
  const std::size_t trend_at = 0;
  const std::size_t seas_at = static_cast<std::size_t>(s.m1);
  const std::size_t ar_at = seas_at + static_cast<std::size_t>(s.m2 ? s.period - 1 : 0);

  if (s.m1 > 0) {
    d.trend.resize(n);
    d.trend_sd.resize(n);
  }
  if (s.m2 > 0) d.seasonal.resize(n);
  if (s.m3 > 0) d.ar.resize(n);
  d.noise.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const FilterState& st = sm.states[i];
    double sum = 0.0;
    if (s.m1 > 0) {
      d.trend[i] = st.mean[trend_at];
      d.trend_sd[i] = std::sqrt(std::max(0.0, st.cov(trend_at, trend_at)));
      sum += d.trend[i];
    }
    if (s.m2 > 0) {
      d.seasonal[i] = st.mean[seas_at];
      sum += d.seasonal[i];
    }
    if (s.m3 > 0) {
      d.ar[i] = st.mean[ar_at];
      sum += d.ar[i];
    }
    d.noise[i] = y.is_observed(i) ? y.values[i] - sum : kNaN;
  }
  return d;
}

DiagonalReport diagonal_min_check(const SweepTable& table, std::size_t band) {
  DiagonalReport report;
  report.band = band;
  std::size_t within = 0, counted = 0;
  for (std::size_t j = 1; j <= table.j_max; ++j) {
    DiagonalReport::Row row;
    row.j = j;
    double best = kNaN;
    for (std::size_t c = 0; c < table.p_values.size(); ++c) {
      const double v = table.cell(j, c);
      if (std::isnan(v)) continue;
      if (std::isnan(best) || v < best) best = v;
    }
    if (!std::isnan(best)) {
      for (std::size_t c = 0; c < table.p_values.size(); ++c) {
        if (table.cell(j, c) == best) row.argmin_ps.push_back(table.p_values[c]);
      }
      row.tie = row.argmin_ps.size() > 1;
      for (std::size_t p : row.argmin_ps) {
        const std::size_t gap = p > j ? p - j : j - p;
        if (gap <= band) {
          row.within_band = true;
          break;
        }
      }
      ++counted;
      within += row.within_band ? 1 : 0;
    }
    report.rows.push_back(std::move(row));
  }
  report.fraction_within =
      counted == 0 ? 0.0 : static_cast<double>(within) / static_cast<double>(counted);
  return report;
}

}  // namespace sspred
