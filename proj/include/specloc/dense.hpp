#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "specloc/types.hpp"

namespace specloc {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.derived().cwiseAbs().maxCoeff();
}

/// Max-entry deviation from Hermiticity, relative to the largest entry.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  return max_abs(m.derived() - m.derived().adjoint().eval()) / scale;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-12) {
  return hermiticity_defect(m) <= rel_tol;
}

Eigen::VectorXd singular_values(const Matrix& m);

/// Largest singular value (operator 2-norm).
double operator_norm(const Matrix& m);

/// Smallest singular value; 0 for an empty matrix.
double smallest_singular_value(const Matrix& m);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Schatten p-norm, p >= 1.
double schatten_norm(const Matrix& m, double p);

/// True iff every entry has exactly zero imaginary part.
bool is_real(const Matrix& m);

/// Eigenvalues of a Hermitian matrix, ascending.  Dispatches to the real
/// solver when the input carries no imaginary part.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

}  // namespace specloc
