#pragma once

#include <cstddef>
#include <vector>

#include "sspred/error.hpp"

namespace sspred {

/// Dense row-major matrix sized for small state dimensions (k <= ~20).
/// No sparse structure, no views; everything is a value.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& d);

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double c, const Matrix& a);
std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

Matrix transpose(const Matrix& a);

/// a * b^T without forming the transpose.
Matrix mult_abt(const Matrix& a, const Matrix& b);

/// h^T V h for a symmetric V and a vector h.
double quad_form(const Matrix& v, const std::vector<double>& h);

double dot(const std::vector<double>& a, const std::vector<double>& b);

/// V <- (V + V^T)/2, then negative diagonal entries are clamped to zero.
/// Applied after every covariance update to suppress asymmetry drift on
/// long recursions.
void symmetrize(Matrix& v);

bool all_finite(const Matrix& a);
bool all_finite(const std::vector<double>& v);

/// Lower-triangular Cholesky factor of an SPD matrix. Throws E_NOT_SPD on
/// a nonpositive pivot.
Matrix cholesky(const Matrix& a);

/// Solve a x = b for SPD a via Cholesky.
Matrix spd_solve(const Matrix& a, const Matrix& b);
std::vector<double> spd_solve(const Matrix& a, const std::vector<double>& b);

Matrix spd_inverse(const Matrix& a);

/// log det(a) for SPD a via Cholesky.
double logdet_spd(const Matrix& a);

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations:
/// a = vectors * diag(values) * vectors^T.
struct SymEigen {
  std::vector<double> values;
  Matrix vectors;  // columns are eigenvectors
};
SymEigen sym_eigen(const Matrix& a);

/// Moore-Penrose pseudo-inverse of a symmetric matrix; eigenvalues below
/// rel_tol * max|eigenvalue| are treated as zero.
Matrix sym_pseudo_inverse(const Matrix& a, double rel_tol = 1e-12);

double max_abs(const Matrix& a);

namespace detail {

/// mean <- F * mean, using scratch (same length) as workspace.
void predict_mean_inplace(const Matrix& f, std::vector<double>& mean,
                          std::vector<double>& scratch);

/// cov <- F * cov * F^T + gqgt, using scratch (same shape) as workspace;
/// the result is symmetrized. All filter and predictor paths go through
/// this single routine so serial and parallel scans agree bit for bit.
void predict_cov_inplace(const Matrix& f, const Matrix& gqgt, Matrix& cov,
                         Matrix& scratch);

}  // namespace detail

}  // namespace sspred
