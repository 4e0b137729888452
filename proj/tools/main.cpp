#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "sspred/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, sspred::RunConfig& cfg, std::string& variant) {
  cmd->add_option("--data", cfg.data_path, "input CSV or one-column text file")->required();
  cmd->add_option("--column", cfg.column, "1-based column to read");
  cmd->add_option("--missing-token", cfg.missing_token, "token marking missing values");
  cmd->add_option("--m1", cfg.m1, "trend order (0, 1 or 2)");
  cmd->add_option("--m2", cfg.m2, "seasonal component (0 or 1)");
  cmd->add_option("--period", cfg.period, "seasonal period");
  cmd->add_option("--m3", cfg.m3, "AR order");
  cmd->add_option("--variant", variant, "criterion variant: literal|concentrated|standard");
  cmd->add_option("--burn-in", cfg.burn_in, "burn-in origin index (0 = state dimension)");
  cmd->add_option("--seed", cfg.seed, "optimizer seed");
  cmd->add_option("--max-iter", cfg.max_iter, "simplex iteration limit");
  cmd->add_option("--f-tol", cfg.f_tol, "simplex value-spread tolerance");
  cmd->add_option("--x-tol", cfg.x_tol, "simplex diameter tolerance");
  cmd->add_option("--multistart", cfg.multistart, "optimizer starts (0 = auto)");
  cmd->add_option("--out-dir", cfg.out_dir, "output directory");
  cmd->add_option("--threads", cfg.threads, "OpenMP thread count (0 = default)");
}

void add_theta_flags(CLI::App* cmd, sspred::RunConfig& cfg) {
  cmd->add_option("--tau1-sq", cfg.tau1_sq, "trend variance (skip fitting)");
  cmd->add_option("--tau2-sq", cfg.tau2_sq, "seasonal variance (skip fitting)");
  cmd->add_option("--tau3-sq", cfg.tau3_sq, "AR variance (skip fitting)");
  cmd->add_option("--sigma-sq", cfg.sigma_sq, "observation variance (skip fitting)");
  cmd->add_option("--ar-coeffs", cfg.ar_coeffs, "AR coefficients (skip fitting)")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-space model fitting and multi-step prediction evaluation"};
  app.require_subcommand(1);

  sspred::RunConfig cfg;
  std::string variant = "literal";

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit hyperparameters and write a report");
  add_common_flags(fit_cmd, cfg, variant);
  fit_cmd->add_option("--p", cfg.p, "criterion prediction horizon");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "fit for each p and tabulate j-step error variances");
  add_common_flags(sweep_cmd, cfg, variant);
  sweep_cmd->add_option("--p-list", cfg.p_list, "fitting horizons")->delimiter(',');
  sweep_cmd->add_option("--j-max", cfg.j_max, "largest evaluation horizon");

  CLI::App* dec_cmd =
      app.add_subcommand("decompose", "smoothed trend/seasonal/AR/noise decomposition");
  add_common_flags(dec_cmd, cfg, variant);
  dec_cmd->add_option("--p", cfg.p, "criterion prediction horizon");
  add_theta_flags(dec_cmd, cfg);

  CLI::App* pred_cmd = app.add_subcommand("predict", "out-of-sample prediction intervals");
  add_common_flags(pred_cmd, cfg, variant);
  pred_cmd->add_option("--p", cfg.p, "criterion prediction horizon");
  pred_cmd->add_option("--horizon", cfg.horizon, "number of leads to emit");
  add_theta_flags(pred_cmd, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.variant = sspred::parse_variant(variant);
  } catch (const sspred::Error& e) {
    std::cerr << "error " << e.token() << ": " << e.what() << "\n";
    return 1;
  }
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

  if (app.got_subcommand(fit_cmd)) return sspred::cmd_fit(cfg);
  if (app.got_subcommand(sweep_cmd)) return sspred::cmd_sweep(cfg);
  if (app.got_subcommand(dec_cmd)) return sspred::cmd_decompose(cfg);
  if (app.got_subcommand(pred_cmd)) return sspred::cmd_predict(cfg);
  return 1;
}
