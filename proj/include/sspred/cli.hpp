#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sspred/sweep.hpp"

namespace sspred {

/// Everything the subcommands need, assembled from command-line flags.
struct RunConfig {
  // input
  std::string data_path;
  std::size_t column = 1;
  std::string missing_token = "NA";

  // model
  int m1 = 2;
  int m2 = 0;
  int period = 12;
  int m3 = 0;

  // criterion
  std::size_t p = 1;
  CriterionVariant variant = CriterionVariant::literal;
  std::size_t burn_in = 0;  // 0 = auto (state dimension)

  // optimizer
  std::uint64_t seed = 1;
  std::size_t max_iter = 2000;
  double f_tol = 1e-8;
  double x_tol = 1e-8;
  std::size_t multistart = 0;  // 0 = auto

  // sweep
  std::vector<std::size_t> p_list = {1};
  std::size_t j_max = 20;

  // predict
  std::size_t horizon = 12;

  // fixed hyperparameters for decompose/predict; when absent, fit first
  std::optional<double> tau1_sq;
  std::optional<double> tau2_sq;
  std::optional<double> tau3_sq;
  std::optional<double> sigma_sq;
  std::vector<double> ar_coeffs;
  bool theta_supplied() const;

  std::string out_dir = ".";
  int threads = 0;  // 0 = library default

  ModelSpec model_spec() const;
  CriterionConfig criterion_config() const;
  FitOptions fit_options() const;
};

CriterionVariant parse_variant(const std::string& name);

/// Subcommands. Each returns a process exit status: 0 on success, nonzero
/// after printing a structured error (code token + message) to stderr.
int cmd_fit(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_decompose(const RunConfig& config);
int cmd_predict(const RunConfig& config);

}  // namespace sspred
