#include "sspred/linalg.hpp"

#include <cmath>
#include <cstddef>

namespace sspred {

namespace {

void require(bool ok, ErrorCode code, const char* msg) {
  if (!ok) throw Error(code, msg);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::dim_mismatch,
          "matrix add: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::dim_mismatch,
          "matrix sub: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::dim_mismatch, "matmul: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

Matrix operator*(double c, const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) r.data()[i] = c * a.data()[i];
  return r;
}

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x) {
  require(a.cols() == x.size(), ErrorCode::dim_mismatch, "matvec: dimension mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix mult_abt(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorCode::dim_mismatch, "mult_abt: dimension mismatch");
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
      c(i, j) = s;
    }
  }
  return c;
}

double quad_form(const Matrix& v, const std::vector<double>& h) {
  require(v.rows() == v.cols() && v.rows() == h.size(), ErrorCode::dim_mismatch,
          "quad_form: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < v.cols(); ++j) row += v(i, j) * h[j];
    s += h[i] * row;
  }
  return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), ErrorCode::dim_mismatch, "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void symmetrize(Matrix& v) {
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = i + 1; j < v.cols(); ++j) {
      const double m = 0.5 * (v(i, j) + v(j, i));
      v(i, j) = m;
      v(j, i) = m;
    }
    if (v(i, i) < 0.0) v(i, i) = 0.0;
  }
}

bool all_finite(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    if (!std::isfinite(a.data()[i])) return false;
  return true;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

Matrix cholesky(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorCode::dim_mismatch, "cholesky: matrix not square");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d))
      throw Error(ErrorCode::not_spd, "cholesky: matrix not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

namespace {

// Solve L y = b, then L^T x = y, overwriting b column by column.
void cholesky_solve_inplace(const Matrix& l, Matrix& b) {
  const std::size_t n = l.rows();
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b(k, c);
      b(i, c) = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = b(ii, c);
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * b(k, c);
      b(ii, c) = s / l(ii, ii);
    }
  }
}

}  // namespace

Matrix spd_solve(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::dim_mismatch, "spd_solve: dimension mismatch");
  const Matrix l = cholesky(a);
  Matrix x = b;
  cholesky_solve_inplace(l, x);
  return x;
}

std::vector<double> spd_solve(const Matrix& a, const std::vector<double>& b) {
  require(a.rows() == b.size(), ErrorCode::dim_mismatch, "spd_solve: dimension mismatch");
  Matrix col(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) col(i, 0) = b[i];
  const Matrix l = cholesky(a);
  cholesky_solve_inplace(l, col);
  std::vector<double> x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = col(i, 0);
  return x;
}

Matrix spd_inverse(const Matrix& a) {
  return spd_solve(a, Matrix::identity(a.rows()));
}

double logdet_spd(const Matrix& a) {
  const Matrix l = cholesky(a);
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

SymEigen sym_eigen(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorCode::dim_mismatch, "sym_eigen: matrix not square");
  const std::size_t n = a.rows();
  Matrix d = a;
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += d(i, j) * d(i, j);
    if (off < 1e-300) break;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(d(i, i));
    if (std::sqrt(off) <= 1e-15 * (scale + 1e-300)) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (d(p, q) == 0.0) continue;
        const double theta = (d(q, q) - d(p, p)) / (2.0 * d(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double dkp = d(k, p), dkq = d(k, q);
          d(k, p) = c * dkp - s * dkq;
          d(k, q) = s * dkp + c * dkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double dpk = d(p, k), dqk = d(q, k);
          d(p, k) = c * dpk - s * dqk;
          d(q, k) = s * dpk + c * dqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = d(i, i);
  out.vectors = v;
  return out;
}

Matrix sym_pseudo_inverse(const Matrix& a, double rel_tol) {
  const SymEigen e = sym_eigen(a);
  double wmax = 0.0;
  for (double w : e.values) wmax = std::max(wmax, std::abs(w));
  const double cut = rel_tol * wmax;
  const std::size_t n = a.rows();
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(e.values[k]) <= cut) continue;
        s += e.vectors(i, k) * e.vectors(j, k) / e.values[k];
      }
      r(i, j) = s;
    }
  }
  return r;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

namespace detail {

void predict_mean_inplace(const Matrix& f, std::vector<double>& mean,
                          std::vector<double>& scratch) {
  const std::size_t n = f.rows();
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += f(i, k) * mean[k];
    scratch[i] = s;
  }
  mean.swap(scratch);
}

void predict_cov_inplace(const Matrix& f, const Matrix& gqgt, Matrix& cov,
                         Matrix& scratch) {
  const std::size_t n = f.rows();
  if (scratch.rows() != n || scratch.cols() != n) scratch = Matrix(n, n);
  // scratch = F * cov
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += f(i, k) * cov(k, j);
      scratch(i, j) = s;
    }
  }
  // cov = scratch * F^T + gqgt
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += scratch(i, k) * f(j, k);
      cov(i, j) = s + gqgt(i, j);
    }
  }
  symmetrize(cov);
}

}  // namespace detail

}  // namespace sspred
