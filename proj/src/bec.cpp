#include "specloc/bec.hpp"

#include <cmath>
#include <stdexcept>

#include "specloc/dense.hpp"
#include "specloc/flow.hpp"
#include "specloc/lattice.hpp"
#include "specloc/localizer.hpp"

namespace specloc {

namespace {

void require_unitary(const Matrix& u, double tol) {
  const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  if (max_abs(defect) > tol) {
    throw std::invalid_argument("not-unitary: chiral block must be unitary");
  }
}

/// Windowed trace over sites with max-norm <= window of an operator acting on
/// box x C^half.
Complex window_trace(const Matrix& m, const LatticeBox& box, int half, int window) {
  Complex t(0.0, 0.0);
  for (Index i = 0; i < box.num_sites(); ++i) {
    const Site& s = box.site(i);
    if (std::max(std::abs(s.x), std::abs(s.y)) > window) continue;
    for (int a = 0; a < half; ++a) t += m(i * half + a, i * half + a);
  }
  return t;
}

}  // namespace

LocalOperator flattened_sigma(const ChiralBlock& u, double kappa, int sign) {
  require_unitary(u.s, 1e-10);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const double scale = 1.0 / std::sqrt(kappa * kappa + 1.0);
  // grading layout: internal = g * half + a
  const int half = u.internal_half;
  const int nd = 2 * half;
  Matrix full(u.box.num_sites() * nd, u.box.num_sites() * nd);
  full.setZero();
  for (Index i = 0; i < u.box.num_sites(); ++i) {
    for (Index j = 0; j < u.box.num_sites(); ++j) {
      const auto uij = u.s.block(i * half, j * half, half, half);
      const auto uji = u.s.block(j * half, i * half, half, half);
      full.block(i * nd, j * nd + half, half, half) = scale * uji.adjoint();
      full.block(i * nd + half, j * nd, half, half) = scale * uij;
    }
    for (int a = 0; a < half; ++a) {
      full(i * nd + a, i * nd + a) = sign * kappa * scale;
      full(i * nd + half + a, i * nd + half + a) = -sign * kappa * scale;
    }
  }
  return LocalOperator(u.box, nd, std::move(full), /*hermitian=*/true);
}

KuboIntegrand kubo_integrand(const ChiralBlock& u, double kappa_max, int nodes, int margin,
                             int sign) {
  require_unitary(u.s, 1e-10);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (nodes < 3 || nodes % 2 == 0) throw std::invalid_argument("node count must be odd and >= 3");
  const Matrix lambda = half_space_projection(u.box, 1, u.internal_half).matrix();
  const Matrix comm = lambda * u.s - u.s * lambda;  // [Lambda, U]
  const Matrix a_plus = u.s.adjoint() * comm;       // U* [Lambda, U]
  const Matrix a_minus = u.s * comm.adjoint() * (-1.0);  // U [Lambda, U*]
  const int window = u.box.radius() - margin;
  const double t_plus = window_trace(a_plus, u.box, u.internal_half, window).real();
  const double t_minus = window_trace(a_minus, u.box, u.internal_half, window).real();

  KuboIntegrand out;
  out.margin = margin;
  out.kappa.resize(static_cast<std::size_t>(nodes));
  out.value.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    const double k = -kappa_max + 2.0 * kappa_max * i / (nodes - 1);
    const double profile = std::pow(1.0 + k * k, -1.5);
    out.kappa[static_cast<std::size_t>(i)] = k;
    // (1/8) tr_w(Sigma [[Lambda, Sigma], d Sigma])
    //   = (1/8) * 2 (1+k^2)^(-3/2) * sign * (t_plus - t_minus);
    // the branch is the one whose integral equals sign * realspace_winding.
    out.value[static_cast<std::size_t>(i)] = 0.25 * profile * sign * (t_plus - t_minus);
  }
  return out;
}

double kubo_integrand_direct(const ChiralBlock& u, double kappa, int margin, int sign) {
  require_unitary(u.s, 1e-10);
  const Index n = u.s.rows();
  const double s2 = kappa * kappa + 1.0;
  const double scale = 1.0 / std::sqrt(s2);
  Matrix sigma = Matrix::Zero(2 * n, 2 * n);
  sigma.topLeftCorner(n, n) = sign * kappa * scale * Matrix::Identity(n, n);
  sigma.bottomRightCorner(n, n) = -sign * kappa * scale * Matrix::Identity(n, n);
  sigma.topRightCorner(n, n) = scale * u.s.adjoint();
  sigma.bottomLeftCorner(n, n) = scale * u.s;
  Matrix dsigma = Matrix::Zero(2 * n, 2 * n);
  const double p32 = std::pow(s2, -1.5);
  dsigma.topLeftCorner(n, n) = sign * p32 * Matrix::Identity(n, n);
  dsigma.bottomRightCorner(n, n) = -sign * p32 * Matrix::Identity(n, n);
  dsigma.topRightCorner(n, n) = -kappa * p32 * u.s.adjoint();
  dsigma.bottomLeftCorner(n, n) = -kappa * p32 * u.s;

  const Matrix l1 = half_space_projection(u.box, 1, u.internal_half).matrix();
  Matrix lambda = Matrix::Zero(2 * n, 2 * n);
  lambda.topLeftCorner(n, n) = l1;
  lambda.bottomRightCorner(n, n) = l1;

  const Matrix inner = lambda * sigma - sigma * lambda;
  const Matrix outer = inner * dsigma - dsigma * inner;
  const Matrix full = sigma * outer;

  // trace over the doubled space restricted to the window
  const int window = u.box.radius() - margin;
  Complex t(0.0, 0.0);
  const int half = u.internal_half;
  for (Index i = 0; i < u.box.num_sites(); ++i) {
    const Site& s = u.box.site(i);
    if (std::max(std::abs(s.x), std::abs(s.y)) > window) continue;
    for (int a = 0; a < half; ++a) {
      t += full(i * half + a, i * half + a);
      t += full(n + i * half + a, n + i * half + a);
    }
  }
  return 0.125 * t.real();
}

namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    total += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return total;
}

}  // namespace

InvariantValue kubo_chern(const ChiralBlock& u, double kappa_max, int nodes, int margin,
                          int sign) {
  if (kappa_max < 10.0) throw std::invalid_argument("kappa_max must be >= 10");
  const KuboIntegrand coarse = kubo_integrand(u, kappa_max, nodes, margin, sign);
  const KuboIntegrand fine = kubo_integrand(u, kappa_max, 2 * nodes - 1, margin, sign);
  const double coarse_value = trapezoid(coarse.kappa, coarse.value);
  const double fine_value = trapezoid(fine.kappa, fine.value);
  if (std::abs(fine_value - coarse_value) > 1e-4) {
    throw std::runtime_error("quadrature-unconverged: doubling the grid moved the integral by " +
                             std::to_string(std::abs(fine_value - coarse_value)));
  }
  InvariantValue v;
  v.method = InvariantMethod::kKuboChern;
  v.pre_rounding = fine_value;
  v.value = static_cast<int>(std::lround(fine_value));
  v.residual = std::abs(fine_value - static_cast<double>(v.value));
  return v;
}

double profile_quadrature(double kappa_max, int nodes) {
  std::vector<double> x(static_cast<std::size_t>(nodes)), y(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    const double k = -kappa_max + 2.0 * kappa_max * i / (nodes - 1);
    x[static_cast<std::size_t>(i)] = k;
    y[static_cast<std::size_t>(i)] = 2.0 * std::pow(1.0 + k * k, -1.5);
  }
  return trapezoid(x, y);
}

HalflineReport halfline_flow_symmetry(const Model& model, int ell, double kappa_max) {
  if (model.dim != 1 || !model.chiral) {
    throw std::invalid_argument("wrong-dimension: the half-line check needs a 1-d chiral model");
  }
  const LatticeBox box(1, ell);
  const LocalOperator h = model.build(box);
  const int n = h.internal_dim();
  const int half = n / 2;
  Matrix profile = Matrix::Zero(h.dim(), h.dim());
  for (Index i = 0; i < box.num_sites(); ++i) {
    const double s = sign_value(box.site(i).x);
    for (int a = 0; a < n; ++a) profile(i * n + a, i * n + a) = a < half ? s : -s;
  }
  const auto at = [&, profile](double kappa) {
    return (h.matrix() + kappa * profile).eval();
  };
  // Two box facts stand in for the infinite-volume flow.  First, the kappa = 0
  // endpoint is the chiral Hamiltonian: its signature is exactly zero by
  // symmetry, even when the truncation leaves edge modes too close to zero to
  // certify.  Second, the Dirichlet cut adds boundary modes that drift with
  // kappa and would contaminate the count, so the endpoint signatures are
  // taken over interior-supported eigenvectors only.
  const int interior = ell - std::max(2, ell / 4);
  const auto mask = interior_mask(box, n, interior);
  const auto signature_at = [&](double kappa) {
    const Matrix m = at(kappa);
    const InertiaResult in = masked_inertia(m, mask, 0.5, 1e-10 * max_abs(m));
    if (in.n_zero > 0) {
      throw std::invalid_argument("endpoint-singular: the flow endpoints must be invertible");
    }
    return in.signature();
  };
  HalflineReport r;
  const int sig_plus = signature_at(kappa_max);
  const int sig_minus = signature_at(-kappa_max);
  r.full_flow = (sig_plus - sig_minus) / 2;
  r.half_flow = sig_plus / 2;
  r.symmetric = r.full_flow == 2 * r.half_flow;
  return r;
}

}  // namespace specloc
