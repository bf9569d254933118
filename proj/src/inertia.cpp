#include "specloc/inertia.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <stdexcept>

#include "specloc/dense.hpp"

namespace specloc {

namespace {

InertiaResult count_from_eigenvalues(const Eigen::VectorXd& eigs, double zero_tolerance) {
  InertiaResult r;
  r.zero_tolerance = zero_tolerance;
  r.min_abs_eig = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < eigs.size(); ++i) {
    const double v = eigs(i);
    r.min_abs_eig = std::min(r.min_abs_eig, std::abs(v));
    if (v > zero_tolerance) {
      ++r.n_plus;
    } else if (v < -zero_tolerance) {
      ++r.n_minus;
    } else {
      ++r.n_zero;
    }
  }
  if (eigs.size() == 0) r.min_abs_eig = 0.0;
  r.certified = r.n_zero == 0 && r.min_abs_eig >= 100.0 * zero_tolerance;
  return r;
}

}  // namespace

InertiaResult inertia(const Matrix& m, double zero_tolerance) {
  if (zero_tolerance < 0.0) throw std::invalid_argument("zero tolerance must be >= 0");
  if (hermiticity_defect(m) > 1e-12) {
    throw std::invalid_argument("not-hermitian: inertia needs a Hermitian matrix");
  }
  return count_from_eigenvalues(hermitian_eigenvalues(m), zero_tolerance);
}

InertiaResult inertia(const Matrix& m) {
  if (hermiticity_defect(m) > 1e-12) {
    throw std::invalid_argument("not-hermitian: inertia needs a Hermitian matrix");
  }
  const auto eigs = hermitian_eigenvalues(m);
  const double norm = eigs.size() == 0 ? 0.0 : eigs.cwiseAbs().maxCoeff();
  return count_from_eigenvalues(eigs, 1e-10 * norm);
}

InertiaResult masked_inertia(const Matrix& m, const std::vector<bool>& mask, double weight,
                             double zero_tolerance) {
  if (hermiticity_defect(m) > 1e-12) {
    throw std::invalid_argument("not-hermitian: inertia needs a Hermitian matrix");
  }
  if (static_cast<Index>(mask.size()) != m.rows()) {
    throw std::invalid_argument("mask size does not match the matrix dimension");
  }
  Eigen::VectorXd eigs;
  Matrix vecs;
  if (is_real(m)) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.real());
    eigs = es.eigenvalues();
    vecs = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    eigs = es.eigenvalues();
    vecs = es.eigenvectors();
  }
  std::vector<double> kept;
  for (Index k = 0; k < eigs.size(); ++k) {
    double w = 0.0;
    for (Index i = 0; i < m.rows(); ++i) {
      if (mask[static_cast<std::size_t>(i)]) w += std::norm(vecs(i, k));
    }
    if (w >= weight) kept.push_back(eigs(k));
  }
  Eigen::VectorXd kept_eigs(static_cast<Index>(kept.size()));
  for (Index i = 0; i < kept_eigs.size(); ++i) kept_eigs(i) = kept[static_cast<std::size_t>(i)];
  return count_from_eigenvalues(kept_eigs, zero_tolerance);
}

double gap(const Matrix& m) { return smallest_singular_value(m); }

double hermitian_gap(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return hermitian_eigenvalues(m).cwiseAbs().minCoeff();
}

}  // namespace specloc
