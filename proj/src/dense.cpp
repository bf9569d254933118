#include "specloc/dense.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace specloc {

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const auto sv = singular_values(m);
  return sv(sv.size() - 1);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m).sum();
}

double schatten_norm(const Matrix& m, double p) {
  if (p < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (m.size() == 0) return 0.0;
  const auto sv = singular_values(m);
  return std::pow(sv.array().pow(p).sum(), 1.0 / p);
}

bool is_real(const Matrix& m) {
  return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  if (is_real(m)) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace specloc
