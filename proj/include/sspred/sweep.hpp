#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sspred/optimizer.hpp"

namespace sspred {

/// Prediction-error-variance table: rows are evaluation horizons j = 1..j_max,
/// columns are fitting horizons p, cells are mean squared j-step errors of
/// the model fitted with criterion horizon p, in raw data units. The final
/// summary is the per-column average over all j.
struct SweepTable {
  std::vector<std::size_t> p_values;
  std::size_t j_max = 0;
  Matrix cells;                    // j_max x p_values.size(), NaN where a fit failed
  std::vector<double> col_means;   // NaN where a fit failed

  struct FitMeta {
    bool ok = false;
    std::string error;
    FitResult fit;
  };
  std::vector<FitMeta> fits;

  double cell(std::size_t j, std::size_t p_index) const { return cells(j - 1, p_index); }
};

/// For each p: fit the model with criterion horizon p, then evaluate the
/// increasing-horizon error variances up to j_max with the fitted
/// parameters. A hard fit failure marks that column absent and the sweep
/// continues. Columns are independent, so they run concurrently; the
/// assembled table does not depend on completion order.
SweepTable run_sweep(const ModelSpec& spec, const Series& y,
                     const std::vector<std::size_t>& p_values, std::size_t j_max,
                     const CriterionConfig& cfg, const FitOptions& opts = {},
                     ExecMode exec = ExecMode::parallel);

/// Smoothed decomposition of the series into component means plus the
/// residual noise (defined as observation minus the summed component means,
/// so additivity is exact). Inactive components have empty vectors. The
/// trend carries a +/-2SD band from the smoothed covariance diagonal.
struct Decomposition {
  std::vector<double> y;
  std::vector<double> trend, trend_sd;
  std::vector<double> seasonal;
  std::vector<double> ar;
  std::vector<double> noise;
  bool used_pseudo_inverse = false;
};

Decomposition decompose(const ModelSpec& spec, const HyperParams& theta, const Series& y);

/// Per-row argmin report: for each evaluation horizon j, which fitting
/// horizons attain the row minimum and whether one of them lies within
/// `band` of p = j.
struct DiagonalReport {
  struct Row {
    std::size_t j = 0;
    std::vector<std::size_t> argmin_ps;  // all columns attaining the row minimum
    bool within_band = false;
    bool tie = false;
  };
  std::vector<Row> rows;
  double fraction_within = 0.0;
  std::size_t band = 0;
};

DiagonalReport diagonal_min_check(const SweepTable& table, std::size_t band = 2);

}  // namespace sspred
