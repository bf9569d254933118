#include "specloc/localizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "specloc/dense.hpp"
#include "specloc/inertia.hpp"

namespace specloc {

void LocalizerSpec::validate() const {
  if (kappa < 0.0 || kappa > 1.0)
    throw std::invalid_argument("kappa-out-of-range: kappa must lie in [0, 1]");
  if (ell < 1) throw std::invalid_argument("invalid-radius: ell must be >= 1");
  if (outer_ell < 2 * ell)
    throw std::invalid_argument("outer-too-small: outer_ell must be >= 2 * ell");
}

namespace {

LocalOperator assemble_d1(const LocalOperator& h, double kappa,
                          const std::vector<Complex>& position) {
  const int n = h.internal_dim();
  const int half = n / 2;
  const Index ns = h.box().num_sites();
  Matrix m = (1.0 - kappa) * h.matrix();
  for (Index i = 0; i < ns; ++i) {
    const double x = position[static_cast<std::size_t>(i)].real();
    for (int a = 0; a < n; ++a) {
      m(i * n + a, i * n + a) += kappa * (a < half ? x : -x);
    }
  }
  return LocalOperator(h.box(), n, std::move(m), /*hermitian=*/true);
}

LocalOperator assemble_d2(const LocalOperator& h, double kappa,
                          const std::vector<Complex>& position) {
  const int n = h.internal_dim();
  const int nd = 2 * n;  // internal of the doubled operator: grading * n + orbital
  const Index ns = h.box().num_sites();
  Matrix m = Matrix::Zero(ns * nd, ns * nd);
  for (Index i = 0; i < ns; ++i) {
    for (Index j = 0; j < ns; ++j) {
      const Matrix b = (1.0 - kappa) * h.block(i, j);
      m.block(i * nd, j * nd, n, n) = b;
      m.block(i * nd + n, j * nd + n, n, n) = -b;
    }
    const Complex x = position[static_cast<std::size_t>(i)];
    for (int a = 0; a < n; ++a) {
      m(i * nd + a, i * nd + n + a) += kappa * std::conj(x);
      m(i * nd + n + a, i * nd + a) += kappa * x;
    }
  }
  return LocalOperator(h.box(), nd, std::move(m), /*hermitian=*/true);
}

std::vector<Complex> position_values(const LatticeBox& box, const PositionFunction& fun) {
  std::vector<Complex> v;
  v.reserve(static_cast<std::size_t>(box.num_sites()));
  for (const Site& s : box.sites()) v.push_back(position_value(s, fun));
  return v;
}

}  // namespace

LocalOperator build_localizer(const LocalOperator& h, double kappa) {
  if (kappa < 0.0 || kappa > 1.0)
    throw std::invalid_argument("kappa-out-of-range: kappa must lie in [0, 1]");
  const PositionFunction raw{PositionKind::kRawAmended, h.box().dim(), h.box().radius()};
  const auto pos = position_values(h.box(), raw);
  if (h.box().dim() == 1) {
    if (!h.chiral())
      throw std::invalid_argument("not-chiral: the 1-d localizer needs a chiral Hamiltonian");
    return assemble_d1(h, kappa, pos);
  }
  return assemble_d2(h, kappa, pos);
}

LocalOperator build_localizer(const Model& model, int ell, double kappa) {
  return build_localizer(model.build(LatticeBox(model.dim, ell)), kappa);
}

LocalOperator build_localizer(const LocalizerSpec& spec) {
  spec.validate();
  return build_localizer(spec.model, spec.ell, spec.kappa);
}

LocalOperator build_infinite_surrogate(const Model& model, int ell, int outer_ell, double kappa) {
  if (outer_ell < 2 * ell)
    throw std::invalid_argument("outer-too-small: outer_ell must be >= 2 * ell");
  if (kappa < 0.0 || kappa > 1.0)
    throw std::invalid_argument("kappa-out-of-range: kappa must lie in [0, 1]");
  const LatticeBox outer(model.dim, outer_ell);
  const LocalOperator h = model.build(outer);
  const PositionKind kind =
      model.dim == 1 ? PositionKind::kClampedRadial : PositionKind::kClampedSquare;
  const auto pos = position_values(outer, PositionFunction{kind, model.dim, ell});
  if (model.dim == 1) {
    if (!h.chiral())
      throw std::invalid_argument("not-chiral: the 1-d localizer needs a chiral Hamiltonian");
    return assemble_d1(h, kappa, pos);
  }
  return assemble_d2(h, kappa, pos);
}

LocalOperator build_infinite_surrogate(const LocalizerSpec& spec) {
  spec.validate();
  return build_infinite_surrogate(spec.model, spec.ell, spec.outer_ell, spec.kappa);
}

Matrix grading_matrix(const LatticeBox& box, int internal_dim) {
  const int half = internal_dim / 2;
  const Index n = box.num_sites() * internal_dim;
  Matrix g = Matrix::Zero(n, n);
  for (Index i = 0; i < box.num_sites(); ++i) {
    for (int a = 0; a < internal_dim; ++a) {
      g(i * internal_dim + a, i * internal_dim + a) = a < half ? 1.0 : -1.0;
    }
  }
  return g;
}

double TheoremConstants::kappa_star() const {
  const double g2 = gap_h * gap_h;
  return 0.5 * g2 / (g2 + std::pow(locality_d, dim));
}

double TheoremConstants::ell_min() const {
  const double ks = kappa_star();
  return (norm_h / ks) * std::max(2.0, 1.0 + 8.0 * norm_h / gap_h);
}

TheoremConstants theorem_constants(const Model& model, const LocalityBudget& budget,
                                   int probe_ell) {
  const LocalOperator h = model.build(LatticeBox(model.dim, probe_ell));
  const int interior = probe_ell - std::max(2, probe_ell / 4);
  const double g = interior_gap(h, interior);
  const auto eigs = hermitian_eigenvalues(h.matrix());
  const double norm = eigs.cwiseAbs().maxCoeff();
  if (g <= 1e-8 * norm) {
    throw std::invalid_argument("gapless-model: no certified gap on the probe box");
  }
  return TheoremConstants{g, norm, budget.derived(), model.dim};
}

double gap_lower_bound(double kappa, const LocalityBudget& budget, double gap_h, int dim) {
  if (kappa < 0.0 || kappa > 1.0)
    throw std::invalid_argument("kappa-out-of-range: kappa must lie in [0, 1]");
  const double dd = std::pow(budget.derived(), dim);
  const double radicand =
      (1.0 - kappa) * (1.0 - kappa) * gap_h * gap_h - kappa * (1.0 - kappa) * dd;
  const double scale = std::max(gap_h * gap_h, dd);
  if (radicand < -1e-14 * scale) {
    throw std::invalid_argument("kappa-too-large: kappa is outside the proven window");
  }
  return std::sqrt(std::max(0.0, radicand));
}

std::vector<bool> interior_mask(const LatticeBox& box, int internal_dim, int interior_radius) {
  std::vector<bool> mask(static_cast<std::size_t>(box.num_sites() * internal_dim));
  for (Index i = 0; i < box.num_sites(); ++i) {
    const Site& s = box.site(i);
    const bool in = std::max(std::abs(s.x), std::abs(s.y)) <= interior_radius;
    for (int a = 0; a < internal_dim; ++a) {
      mask[static_cast<std::size_t>(i * internal_dim + a)] = in;
    }
  }
  return mask;
}

InertiaResult interior_inertia(const LocalOperator& op, int interior_radius,
                               double interior_weight) {
  const auto mask = interior_mask(op.box(), op.internal_dim(), interior_radius);
  InertiaResult r = masked_inertia(op.matrix(), mask, interior_weight,
                                   1e-10 * max_abs(op.matrix()));
  if (r.dim() == 0) {
    throw std::runtime_error("interior filter rejected every eigenvector");
  }
  return r;
}

double interior_gap(const LocalOperator& op, int interior_radius, double interior_weight) {
  return interior_inertia(op, interior_radius, interior_weight).min_abs_eig;
}

}  // namespace specloc
