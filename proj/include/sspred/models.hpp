#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sspred/ssm.hpp"

namespace sspred {

/// Structural hyperparameters. Variances are in raw data units; during
/// fitting the optimizer works with sigma_sq = 1 so that tau values are
/// variance ratios against the observation noise.
struct HyperParams {
  double tau1_sq = 0.0;          // trend system-noise variance
  double tau2_sq = 0.0;          // seasonal system-noise variance
  double tau3_sq = 0.0;          // AR system-noise variance
  std::vector<double> ar_pacs;   // partial autocorrelations, each in (-1, 1)
  double sigma_sq = 1.0;         // observation-noise variance
};

/// Structural orders of a trend + seasonal + AR decomposition model.
struct ModelSpec {
  int m1 = 2;        // trend order: 0, 1 or 2
  int m2 = 0;        // seasonal: 0 or 1
  int period = 12;   // seasonal period (when m2 = 1)
  int m3 = 0;        // AR order
  HyperParams theta;
  double v0_diag = 1e7;  // diffuse initial variance per state element, times sigma_sq

  int state_dim() const { return m1 + (m2 ? period - 1 : 0) + m3; }
  void validate() const;
};

/// One structural component in companion form with a single noise channel.
struct ModelBlock {
  Matrix F;
  std::vector<double> g;   // noise loading column
  std::vector<double> h;   // observation row
  double noise_var = 0.0;
};

/// Trend component. Order 1: T_n = T_{n-1} + v_n. Order 2:
/// T_n = 2 T_{n-1} - T_{n-2} + v_n with state (T_n, T_{n-1}).
ModelBlock build_trend(int order, double tau_sq);

/// Stochastic seasonal component S_n = -(S_{n-1} + ... + S_{n-period+1}) + v_n,
/// state dimension period - 1.
ModelBlock build_seasonal(int period, double tau_sq);

/// Stationary AR component p_n = sum_j a_j p_{n-j} + z_n in companion form.
/// Rejects coefficient vectors whose characteristic roots reach the unit
/// circle (modulus >= 1 - 1e-12).
ModelBlock build_ar(const std::vector<double>& coeffs, double tau_sq);

/// Levinson-Durbin map from partial autocorrelations (each in (-1,1)) to AR
/// coefficients; the output is always stationary.
std::vector<double> pacs_to_ar(const std::vector<double>& pacs);

/// Inverse map (backward recursion). Throws E_NONSTATIONARY_AR when the
/// coefficients are not strictly stationary.
std::vector<double> ar_to_pacs(const std::vector<double>& coeffs);

/// Roots of the AR characteristic polynomial z^m - a_1 z^{m-1} - ... - a_m.
std::vector<std::complex<double>> ar_char_roots(const std::vector<double>& coeffs);

double ar_spectral_radius(const std::vector<double>& coeffs);

/// Block-diagonal composition of the active components:
/// y_n = trend + seasonal + AR + observation noise. Initial state is zero
/// with covariance v0_diag * sigma_sq * I.
StateSpaceModel compose(const ModelSpec& spec);

}  // namespace sspred
