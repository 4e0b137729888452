#include "sspred/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "sspred/error.hpp"
#include "sspred/io.hpp"

namespace sspred {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& file) {
  return (std::filesystem::path(cfg.out_dir) / file).string();
}

void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create output directory " + cfg.out_dir);
}

int report_error(const char* token, const std::string& message) {
  std::cerr << "error " << token << ": " << message << "\n";
  return 1;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const Error& e) {
    return report_error(e.token(), e.what());
  } catch (const std::exception& e) {
    return report_error("E_INTERNAL", e.what());
  }
}

/// Fit report rows shared by the TSV and the text rendering.
std::vector<std::pair<std::string, std::string>> fit_report_fields(const RunConfig& cfg,
                                                                   const FitResult& fr) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("m1", std::to_string(cfg.m1));
  kv.emplace_back("m2", std::to_string(cfg.m2));
  kv.emplace_back("period", std::to_string(cfg.period));
  kv.emplace_back("m3", std::to_string(cfg.m3));
  kv.emplace_back("p", std::to_string(cfg.p));
  kv.emplace_back("variant", variant_name(cfg.variant));
  kv.emplace_back("burn_in",
                  std::to_string(cfg.criterion_config().resolved_burn_in(
                      static_cast<std::size_t>(cfg.model_spec().state_dim()))));
  kv.emplace_back("seed", std::to_string(cfg.seed));
  kv.emplace_back("converged", fr.converged ? "1" : "0");
  kv.emplace_back("iterations", std::to_string(fr.iterations));
  kv.emplace_back("evaluations", std::to_string(fr.evaluations));
  kv.emplace_back("criterion", format_value(fr.criterion.value));
  kv.emplace_back("n_terms", std::to_string(fr.criterion.n_terms));
  kv.emplace_back("sigma_sq_hat", format_value(fr.theta_hat.sigma_sq));
  kv.emplace_back("sigma_p_sq_hat", format_value(fr.criterion.sigma_p_sq_hat));
  if (cfg.m1 > 0) kv.emplace_back("tau1_sq", format_value(fr.theta_hat.tau1_sq));
  if (cfg.m2 > 0) kv.emplace_back("tau2_sq", format_value(fr.theta_hat.tau2_sq));
  if (cfg.m3 > 0) kv.emplace_back("tau3_sq", format_value(fr.theta_hat.tau3_sq));
  const std::vector<double> coeffs = pacs_to_ar(fr.theta_hat.ar_pacs);
  for (std::size_t i = 0; i < fr.theta_hat.ar_pacs.size(); ++i)
    kv.emplace_back("ar_pac" + std::to_string(i + 1), format_value(fr.theta_hat.ar_pacs[i]));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    kv.emplace_back("ar_coef" + std::to_string(i + 1), format_value(coeffs[i]));
  return kv;
}

void write_fit_report(const RunConfig& cfg, const FitResult& fr) {
  const auto kv = fit_report_fields(cfg, fr);
  std::vector<std::string> header, row;
  for (const auto& [k, v] : kv) {
    header.push_back(k);
    row.push_back(v);
  }
  write_tsv(out_path(cfg, "fit_report.tsv"), header, {row});

  std::ostringstream text;
  for (const auto& [k, v] : kv) text << k << ": " << v << "\n";
  write_text(out_path(cfg, "fit_report.txt"), text.str());
}

FitResult run_fit(const RunConfig& cfg, const Series& y) {
  return fit(cfg.model_spec(), y, cfg.criterion_config(), cfg.fit_options());
}

/// Hyperparameters for decompose/predict: taken from the flags when
/// supplied, otherwise estimated by fitting first.
HyperParams resolve_theta(const RunConfig& cfg, const Series& y) {
  if (!cfg.theta_supplied()) return run_fit(cfg, y).theta_hat;
  HyperParams theta;
  if (cfg.m1 > 0) {
    if (!cfg.tau1_sq) throw Error(ErrorCode::invalid_argument, "missing --tau1-sq");
    theta.tau1_sq = *cfg.tau1_sq;
  }
  if (cfg.m2 > 0) {
    if (!cfg.tau2_sq) throw Error(ErrorCode::invalid_argument, "missing --tau2-sq");
    theta.tau2_sq = *cfg.tau2_sq;
  }
  if (cfg.m3 > 0) {
    if (!cfg.tau3_sq) throw Error(ErrorCode::invalid_argument, "missing --tau3-sq");
    theta.tau3_sq = *cfg.tau3_sq;
    if (static_cast<int>(cfg.ar_coeffs.size()) != cfg.m3)
      throw Error(ErrorCode::invalid_argument, "--ar-coeffs must supply m3 coefficients");
    theta.ar_pacs = ar_to_pacs(cfg.ar_coeffs);
  }
  if (!cfg.sigma_sq) throw Error(ErrorCode::invalid_argument, "missing --sigma-sq");
  theta.sigma_sq = *cfg.sigma_sq;
  return theta;
}

}  // namespace

bool RunConfig::theta_supplied() const {
  return tau1_sq || tau2_sq || tau3_sq || sigma_sq || !ar_coeffs.empty();
}

ModelSpec RunConfig::model_spec() const {
  ModelSpec spec;
  spec.m1 = m1;
  spec.m2 = m2;
  spec.period = period;
  spec.m3 = m3;
  spec.theta.ar_pacs.assign(static_cast<std::size_t>(std::max(m3, 0)), 0.0);
  return spec;
}

CriterionConfig RunConfig::criterion_config() const {
  CriterionConfig cc;
  cc.p = p;
  cc.variant = variant;
  cc.burn_in = burn_in;
  return cc;
}

FitOptions RunConfig::fit_options() const {
  FitOptions fo;
  fo.nm.max_iter = max_iter;
  fo.nm.f_tol = f_tol;
  fo.nm.x_tol = x_tol;
  fo.seed = seed;
  fo.multistart = multistart;
  return fo;
}

CriterionVariant parse_variant(const std::string& name) {
  if (name == "literal") return CriterionVariant::literal;
  if (name == "concentrated") return CriterionVariant::concentrated;
  if (name == "standard") return CriterionVariant::standard;
  throw Error(ErrorCode::invalid_argument,
              "unknown variant \"" + name + "\" (expected literal|concentrated|standard)");
}

int cmd_fit(const RunConfig& config) {
  return guarded([&] {
    const Series y = read_series(config.data_path, config.column, config.missing_token);
    const FitResult fr = run_fit(config, y);
    ensure_out_dir(config);
    write_fit_report(config, fr);
    for (const auto& [k, v] : fit_report_fields(config, fr))
      std::cout << k << ": " << v << "\n";
  });
}

int cmd_sweep(const RunConfig& config) {
  return guarded([&] {
    const Series y = read_series(config.data_path, config.column, config.missing_token);
    const SweepTable table = run_sweep(config.model_spec(), y, config.p_list, config.j_max,
                                       config.criterion_config(), config.fit_options());
    ensure_out_dir(config);

    std::vector<std::string> header{"j"};
    for (std::size_t p : table.p_values) header.push_back(std::to_string(p));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 1; j <= table.j_max; ++j) {
      std::vector<std::string> row{std::to_string(j)};
      for (std::size_t c = 0; c < table.p_values.size(); ++c)
        row.push_back(format_value(table.cell(j, c)));
      rows.push_back(std::move(row));
    }
    std::vector<std::string> mean_row{"mean"};
    for (double m : table.col_means) mean_row.push_back(format_value(m));
    rows.push_back(std::move(mean_row));
    write_tsv(out_path(config, "sweep_table.tsv"), header, rows);

    std::vector<std::vector<std::string>> long_rows;
    for (std::size_t c = 0; c < table.p_values.size(); ++c)
      for (std::size_t j = 1; j <= table.j_max; ++j)
        long_rows.push_back({std::to_string(table.p_values[c]), std::to_string(j),
                             format_value(table.cell(j, c))});
    write_tsv(out_path(config, "sweep_long.tsv"), {"p", "j", "sigma_sq"}, long_rows);

    for (std::size_t c = 0; c < table.p_values.size(); ++c) {
      if (!table.fits[c].ok)
        std::cerr << "warning: fit failed for p=" << table.p_values[c] << " ("
                  << table.fits[c].error << ")\n";
    }
    std::cout << "wrote " << out_path(config, "sweep_table.tsv") << " and "
              << out_path(config, "sweep_long.tsv") << "\n";
  });
}

int cmd_decompose(const RunConfig& config) {
  return guarded([&] {
    const Series y = read_series(config.data_path, config.column, config.missing_token);
    const HyperParams theta = resolve_theta(config, y);
    const Decomposition d = decompose(config.model_spec(), theta, y);
    ensure_out_dir(config);

    std::vector<std::string> header{"index", "y"};
    if (config.m1 > 0) {
      header.push_back("trend");
      header.push_back("trend_lo");
      header.push_back("trend_hi");
    }
    if (config.m2 > 0) header.push_back("seasonal");
    if (config.m3 > 0) header.push_back("ar");
    header.push_back("noise");

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::vector<std::string> row{std::to_string(i + 1), format_value(d.y[i])};
      if (config.m1 > 0) {
        row.push_back(format_value(d.trend[i]));
        row.push_back(format_value(d.trend[i] - 2.0 * d.trend_sd[i]));
        row.push_back(format_value(d.trend[i] + 2.0 * d.trend_sd[i]));
      }
      if (config.m2 > 0) row.push_back(format_value(d.seasonal[i]));
      if (config.m3 > 0) row.push_back(format_value(d.ar[i]));
      row.push_back(format_value(d.noise[i]));
      rows.push_back(std::move(row));
    }
    write_tsv(out_path(config, "decomposition.tsv"), header, rows);
    std::cout << "wrote " << out_path(config, "decomposition.tsv") << "\n";
  });
}

int cmd_predict(const RunConfig& config) {
  return guarded([&] {
    if (config.horizon == 0)
      throw Error(ErrorCode::invalid_argument, "--horizon must be >= 1");
    const Series y = read_series(config.data_path, config.column, config.missing_token);
    const HyperParams theta = resolve_theta(config, y);
    ModelSpec spec = config.model_spec();
    spec.theta = theta;
    const StateSpaceModel model = compose(spec);
    const FilterRun run = run_filter(model, y);
    const HorizonPrediction pred =
        predict_horizon(model, run.filtered.back(), config.horizon);
    ensure_out_dir(config);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < config.horizon; ++j) {
      const double sd = std::sqrt(pred.obs_var[j]);
      rows.push_back({std::to_string(j + 1), format_value(pred.obs_mean[j]),
                      format_value(pred.obs_var[j]),
                      format_value(pred.obs_mean[j] - 2.0 * sd),
                      format_value(pred.obs_mean[j] + 2.0 * sd)});
    }
    write_tsv(out_path(config, "prediction.tsv"), {"lead", "mean", "variance", "lo", "hi"},
              rows);
    std::cout << "wrote " << out_path(config, "prediction.tsv") << "\n";
  });
}

}  // namespace sspred
