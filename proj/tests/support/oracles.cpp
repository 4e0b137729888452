#include "support/oracles.hpp"

#include <cmath>

namespace oracle {

Matrix matmul_naive(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

double det_cofactor(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  double det = 0.0;
  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t mj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, mj++) = a(i, j);
      }
    }
    det += sign * a(0, col) * det_cofactor(minor);
    sign = -sign;
  }
  return det;
}

namespace {

// State moments mu_n = F^n x0 and Sigma_n (n = 0..N), plus F powers.
struct StatePath {
  std::vector<std::vector<double>> mean;
  std::vector<Matrix> cov;
  std::vector<Matrix> fpow;
};

StatePath state_path(const StateSpaceModel& model, std::size_t n) {
  StatePath p;
  p.mean.resize(n + 1);
  p.cov.resize(n + 1);
  p.fpow.resize(n + 1);
  p.mean[0] = model.x0;
  p.cov[0] = model.V0;
  p.fpow[0] = Matrix::identity(model.state_dim());
  const Matrix gqgt = model.gqgt();
  for (std::size_t i = 1; i <= n; ++i) {
    p.mean[i] = model.F * p.mean[i - 1];
    p.cov[i] = sspred::mult_abt(model.F * p.cov[i - 1], model.F) + gqgt;
    p.fpow[i] = model.F * p.fpow[i - 1];
  }
  return p;
}

// Cov(x_a, x_b) = Sigma_min (F^{|a-b|})^T arranged by order.
Matrix state_cross_cov(const StatePath& p, std::size_t a, std::size_t b) {
  if (a <= b) return sspred::mult_abt(p.cov[a], p.fpow[b - a]);
  return p.fpow[a - b] * p.cov[b];
}

}  // namespace

JointObs joint_obs_moments(const StateSpaceModel& model, std::size_t n) {
  const StatePath path = state_path(model, n);
  const std::vector<double> h = model.h_row();

  JointObs out;
  out.mean.resize(n);
  out.cov = Matrix(n, n);
  for (std::size_t a = 1; a <= n; ++a) {
    out.mean[a - 1] = sspred::dot(h, path.mean[a]);
    for (std::size_t b = a; b <= n; ++b) {
      const Matrix cxx = state_cross_cov(path, a, b);
      double c = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) c += h[i] * cxx(i, j) * h[j];
      if (a == b) c += model.R;
      out.cov(a - 1, b - 1) = c;
      out.cov(b - 1, a - 1) = c;
    }
  }
  return out;
}

double joint_loglik(const StateSpaceModel& model, const std::vector<double>& y) {
  const std::size_t n = y.size();
  const JointObs joint = joint_obs_moments(model, n);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = y[i] - joint.mean[i];
  const std::vector<double> solved = sspred::spd_solve(joint.cov, r);
  const double quad = sspred::dot(r, solved);
  const double logdet = sspred::logdet_spd(joint.cov);
  return -0.5 * (static_cast<double>(n) * std::log(2.0 * M_PI) + logdet + quad);
}

CondState conditional_state(const StateSpaceModel& model, const std::vector<double>& y,
                            std::size_t t, std::size_t upto) {
  const StatePath path = state_path(model, upto > t ? upto : t);
  const JointObs joint = joint_obs_moments(model, upto);
  const std::vector<double> h = model.h_row();
  const std::size_t k = model.state_dim();

  // Cov(x_t, y_b) = Cov(x_t, x_b) H^T
  Matrix cxy(k, upto);
  for (std::size_t b = 1; b <= upto; ++b) {
    const Matrix cxx = state_cross_cov(path, t, b);
    for (std::size_t i = 0; i < k; ++i) {
      double c = 0.0;
      for (std::size_t j = 0; j < k; ++j) c += cxx(i, j) * h[j];
      cxy(i, b - 1) = c;
    }
  }

  std::vector<double> r(upto);
  for (std::size_t i = 0; i < upto; ++i) r[i] = y[i] - joint.mean[i];

  const std::vector<double> sr = sspred::spd_solve(joint.cov, r);
  const Matrix sc = sspred::spd_solve(joint.cov, sspred::transpose(cxy));  // S^{-1} Cyx

  CondState out;
  out.mean.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double m = path.mean[t][i];
    for (std::size_t b = 0; b < upto; ++b) m += cxy(i, b) * sr[b];
    out.mean[i] = m;
  }
  out.cov = path.cov[t] - cxy * sc;
  return out;
}

StateSpaceModel random_stable_model(std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> var(0.2, 2.0);

  const std::size_t k = dim_dist(rng);
  std::uniform_int_distribution<std::size_t> noise_dist(1, k);
  const std::size_t m = noise_dist(rng);

  StateSpaceModel model;
  model.F = Matrix(k, k);
  for (std::size_t i = 0; i < k * k; ++i) model.F.data()[i] = normal(rng);
  // Bound the spectral radius by the infinity norm.
  double norm = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) row += std::abs(model.F(i, j));
    norm = std::max(norm, row);
  }
  const double scale = 0.9 / std::max(norm, 0.9);
  model.F = scale * model.F;

  model.G = Matrix(k, m);
  for (std::size_t i = 0; i < k * m; ++i) model.G.data()[i] = normal(rng);
  model.H = Matrix(1, k);
  for (std::size_t i = 0; i < k; ++i) model.H(0, i) = normal(rng);
  model.Q = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) model.Q(i, i) = var(rng);
  model.R = var(rng);
  model.x0.resize(k);
  for (std::size_t i = 0; i < k; ++i) model.x0[i] = normal(rng);
  Matrix a(k, k);
  for (std::size_t i = 0; i < k * k; ++i) a.data()[i] = 0.5 * normal(rng);
  model.V0 = sspred::mult_abt(a, a) + 0.5 * Matrix::identity(k);
  return model;
}

}  // namespace oracle
