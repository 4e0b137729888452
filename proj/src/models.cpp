#include "sspred/models.hpp"

#include <cmath>
#include <string>

#include "sspred/error.hpp"

namespace sspred {

void ModelSpec::validate() const {
  if (m1 < 0 || m1 > 2) throw Error(ErrorCode::invalid_argument, "spec: m1 must be 0, 1 or 2");
  if (m2 < 0 || m2 > 1) throw Error(ErrorCode::invalid_argument, "spec: m2 must be 0 or 1");
  if (m3 < 0) throw Error(ErrorCode::invalid_argument, "spec: m3 must be >= 0");
  if (m2 == 1 && period < 2)
    throw Error(ErrorCode::invalid_argument, "spec: period must be >= 2 when m2 = 1");
  if (m1 == 0 && m2 == 0 && m3 == 0)
    throw Error(ErrorCode::invalid_argument, "spec: no active components");
  if (static_cast<int>(theta.ar_pacs.size()) != m3)
    throw Error(ErrorCode::invalid_argument, "spec: ar_pacs length must equal m3");
  if (theta.tau1_sq < 0 || theta.tau2_sq < 0 || theta.tau3_sq < 0)
    throw Error(ErrorCode::invalid_argument, "spec: component variances must be >= 0");
  if (!(theta.sigma_sq > 0))
    throw Error(ErrorCode::invalid_argument, "spec: sigma_sq must be > 0");
  if (!(v0_diag > 0))
    throw Error(ErrorCode::invalid_argument, "spec: v0_diag must be > 0");
  for (double p : theta.ar_pacs)
    if (!(std::abs(p) < 1.0))
      throw Error(ErrorCode::invalid_argument, "spec: partial autocorrelation outside (-1,1)");
}

ModelBlock build_trend(int order, double tau_sq) {
  if (tau_sq < 0) throw Error(ErrorCode::invalid_argument, "trend: tau_sq must be >= 0");
  ModelBlock b;
  if (order == 1) {
    b.F = Matrix(1, 1);
    b.F(0, 0) = 1.0;
    b.g = {1.0};
    b.h = {1.0};
  } else if (order == 2) {
    b.F = Matrix(2, 2);
    b.F(0, 0) = 2.0;
    b.F(0, 1) = -1.0;
    b.F(1, 0) = 1.0;
    b.g = {1.0, 0.0};
    b.h = {1.0, 0.0};
  } else {
    throw Error(ErrorCode::invalid_argument,
                "trend: unsupported order " + std::to_string(order));
  }
  b.noise_var = tau_sq;
  return b;
}

ModelBlock build_seasonal(int period, double tau_sq) {
  if (period < 2) throw Error(ErrorCode::invalid_argument, "seasonal: period must be >= 2");
  if (tau_sq < 0) throw Error(ErrorCode::invalid_argument, "seasonal: tau_sq must be >= 0");
  const std::size_t k = static_cast<std::size_t>(period - 1);
  ModelBlock b;
  b.F = Matrix(k, k);
  for (std::size_t j = 0; j < k; ++j) b.F(0, j) = -1.0;
  for (std::size_t i = 1; i < k; ++i) b.F(i, i - 1) = 1.0;
  b.g.assign(k, 0.0);
  b.g[0] = 1.0;
  b.h.assign(k, 0.0);
  b.h[0] = 1.0;
  b.noise_var = tau_sq;
  return b;
}

std::vector<std::complex<double>> ar_char_roots(const std::vector<double>& coeffs) {
  const std::size_t m = coeffs.size();
  std::vector<std::complex<double>> roots(m);
  if (m == 0) return roots;
  if (m == 1) {
    roots[0] = coeffs[0];
    return roots;
  }
  // Durand-Kerner on p(z) = z^m - a_1 z^{m-1} - ... - a_m.
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = 1.0;
    for (std::size_t j = 0; j < m; ++j) v = v * z - coeffs[j];
    return v;
  };
  double bound = 1.0;
  for (double a : coeffs) bound = std::max(bound, 1.0 + std::abs(a));
  const std::complex<double> seed(0.4, 0.9);  // not a root of unity
  std::complex<double> w = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    w *= seed;
    roots[i] = bound * w;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (std::abs(denom) == 0.0) denom = 1e-30;
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14 * bound) break;
  }
  return roots;
}

double ar_spectral_radius(const std::vector<double>& coeffs) {
  double r = 0.0;
  for (const auto& z : ar_char_roots(coeffs)) r = std::max(r, std::abs(z));
  return r;
}

ModelBlock build_ar(const std::vector<double>& coeffs, double tau_sq) {
  if (coeffs.empty()) throw Error(ErrorCode::invalid_argument, "ar: order must be >= 1");
  if (tau_sq < 0) throw Error(ErrorCode::invalid_argument, "ar: tau_sq must be >= 0");
  if (!all_finite(coeffs))
    throw Error(ErrorCode::nonfinite_value, "ar: non-finite coefficient");
  if (ar_spectral_radius(coeffs) >= 1.0 - 1e-12)
    throw Error(ErrorCode::nonstationary_ar,
                "ar: characteristic roots reach the unit circle");
  const std::size_t k = coeffs.size();
  ModelBlock b;
  b.F = Matrix(k, k);
  for (std::size_t j = 0; j < k; ++j) b.F(0, j) = coeffs[j];
  for (std::size_t i = 1; i < k; ++i) b.F(i, i - 1) = 1.0;
  b.g.assign(k, 0.0);
  b.g[0] = 1.0;
  b.h.assign(k, 0.0);
  b.h[0] = 1.0;
  b.noise_var = tau_sq;
  return b;
}

std::vector<double> pacs_to_ar(const std::vector<double>& pacs) {
  for (double p : pacs)
    if (!(std::abs(p) < 1.0))
      throw Error(ErrorCode::invalid_argument,
                  "pacs_to_ar: partial autocorrelation outside (-1,1)");
  std::vector<double> a(pacs.size(), 0.0);
  std::vector<double> prev(pacs.size(), 0.0);
  for (std::size_t j = 0; j < pacs.size(); ++j) {
    prev = a;
    a[j] = pacs[j];
    for (std::size_t i = 0; i < j; ++i) a[i] = prev[i] - pacs[j] * prev[j - 1 - i];
  }
  return a;
}

std::vector<double> ar_to_pacs(const std::vector<double>& coeffs) {
  std::vector<double> pacs(coeffs.size(), 0.0);
  std::vector<double> a = coeffs;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    const double k = a[j];
    if (!(std::abs(k) < 1.0))
      throw Error(ErrorCode::nonstationary_ar, "ar_to_pacs: coefficients not stationary");
    pacs[j] = k;
    std::vector<double> prev(j, 0.0);
    for (std::size_t i = 0; i < j; ++i)
      prev[i] = (a[i] + k * a[j - 1 - i]) / (1.0 - k * k);
    a = std::move(prev);
  }
  return pacs;
}

StateSpaceModel compose(const ModelSpec& spec) {
  spec.validate();
  std::vector<ModelBlock> blocks;
  if (spec.m1 > 0) blocks.push_back(build_trend(spec.m1, spec.theta.tau1_sq));
  if (spec.m2 > 0) blocks.push_back(build_seasonal(spec.period, spec.theta.tau2_sq));
  if (spec.m3 > 0)
    blocks.push_back(build_ar(pacs_to_ar(spec.theta.ar_pacs), spec.theta.tau3_sq));

  std::size_t k = 0;
  for (const auto& b : blocks) k += b.F.rows();
  const std::size_t m = blocks.size();

  StateSpaceModel model;
  model.F = Matrix(k, k);
  model.G = Matrix(k, m);
  model.H = Matrix(1, k);
  model.Q = Matrix(m, m);
  model.R = spec.theta.sigma_sq;
  model.x0.assign(k, 0.0);
  model.V0 = Matrix(k, k);

  std::size_t row = 0;
  for (std::size_t bi = 0; bi < m; ++bi) {
    const ModelBlock& b = blocks[bi];
    const std::size_t kb = b.F.rows();
    for (std::size_t i = 0; i < kb; ++i)
      for (std::size_t j = 0; j < kb; ++j) model.F(row + i, row + j) = b.F(i, j);
    for (std::size_t i = 0; i < kb; ++i) {
      model.G(row + i, bi) = b.g[i];
      model.H(0, row + i) = b.h[i];
    }
    model.Q(bi, bi) = b.noise_var;
    row += kb;
  }
  for (std::size_t i = 0; i < k; ++i) model.V0(i, i) = spec.v0_diag * spec.theta.sigma_sq;
  return model;
}

}  // namespace sspred
