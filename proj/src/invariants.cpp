#include "specloc/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "specloc/dense.hpp"
#include "specloc/inertia.hpp"
#include "specloc/lattice.hpp"

namespace specloc {

std::string method_name(InvariantMethod m) {
  switch (m) {
    case InvariantMethod::kKSpaceWinding: return "kspace-winding";
    case InvariantMethod::kKSpaceChern: return "kspace-chern";
    case InvariantMethod::kRealSpaceWinding: return "realspace-winding";
    case InvariantMethod::kChernMarker: return "chern-marker";
    case InvariantMethod::kKuboChern: return "kubo-chern";
  }
  return "unknown";
}

// Orientation of the winding oracle, fixed once: the chain with dominant
// inter-cell hopping (v < w) carries winding +1, and half the localizer
// signature reproduces it under the same convention.
constexpr double kWindingOrientation = -1.0;

namespace {

InvariantValue rounded(double pre, InvariantMethod method) {
  InvariantValue v;
  v.method = method;
  v.pre_rounding = pre;
  v.value = static_cast<int>(std::lround(pre));
  v.residual = std::abs(pre - static_cast<double>(v.value));
  return v;
}

/// Frame of the eigenvectors of h with eigenvalue < 0, as columns.
Matrix occupied_frame(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Index occ = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < 0.0) ++occ;
  }
  return es.eigenvectors().leftCols(occ);
}

}  // namespace

InvariantValue kspace_winding(const std::function<Matrix(double)>& symbol, int nk) {
  if (nk < 8) throw std::invalid_argument("winding grid must have at least 8 points");
  const double step = 2.0 * std::numbers::pi / nk;
  std::vector<double> phase(static_cast<std::size_t>(nk));
  for (int i = 0; i < nk; ++i) {
    const Matrix s = symbol(i * step);
    if (smallest_singular_value(s) <= 1e-8) {
      throw std::invalid_argument("gap-closed-on-grid: chiral symbol is singular on the k-grid");
    }
    phase[static_cast<std::size_t>(i)] = std::arg(s.determinant());
  }
  double total = 0.0;
  for (int i = 0; i < nk; ++i) {
    double d = phase[static_cast<std::size_t>((i + 1) % nk)] - phase[static_cast<std::size_t>(i)];
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    total += d;
  }
  return rounded(kWindingOrientation * total / (2.0 * std::numbers::pi),
                 InvariantMethod::kKSpaceWinding);
}

InvariantValue kspace_chern(const std::function<Matrix(double, double)>& symbol, int nk) {
  if (nk < 4) throw std::invalid_argument("Chern grid must have at least 4 points");
  const double step = 2.0 * std::numbers::pi / nk;
  std::vector<Matrix> frames(static_cast<std::size_t>(nk) * static_cast<std::size_t>(nk));
  const auto at = [&](int i, int j) -> Matrix& {
    return frames[static_cast<std::size_t>(((i % nk + nk) % nk)) * static_cast<std::size_t>(nk) +
                  static_cast<std::size_t>((j % nk + nk) % nk)];
  };
  for (int i = 0; i < nk; ++i) {
    for (int j = 0; j < nk; ++j) {
      const Matrix h = symbol(i * step, j * step);
      if (hermitian_gap(h) <= 1e-8) {
        throw std::invalid_argument("gap-closed-on-grid: Bloch Hamiltonian is gapless on the k-grid");
      }
      at(i, j) = occupied_frame(h);
    }
  }
  // Plaquette field strength of the occupied-frame link variables; each term
  // stays on the principal branch, the sum is 2 pi * integer exactly.
  const auto link = [&](int i1, int j1, int i2, int j2) {
    return (at(i1, j1).adjoint() * at(i2, j2)).determinant();
  };
  double total = 0.0;
  for (int i = 0; i < nk; ++i) {
    for (int j = 0; j < nk; ++j) {
      const Complex loop = link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) *
                           link(i + 1, j + 1, i, j + 1) * link(i, j + 1, i, j);
      total += std::arg(loop);
    }
  }
  return rounded(total / (2.0 * std::numbers::pi), InvariantMethod::kKSpaceChern);
}

InvariantValue realspace_winding(const ChiralBlock& s, int margin) {
  if (margin < 0 || margin >= s.box.radius()) {
    throw std::invalid_argument("margin must lie in [0, radius)");
  }
  Matrix u;
  try {
    u = flatten_block(s).s;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("singular-S: chiral block is not invertible");
  }
  const LocalOperator lambda = half_space_projection(s.box, 1, s.internal_half);
  const Matrix commutator = lambda.matrix() * u - u * lambda.matrix();
  const Matrix t = u.adjoint() * commutator;
  const int window = s.box.radius() - margin;
  Complex trace(0.0, 0.0);
  for (Index i = 0; i < s.box.num_sites(); ++i) {
    const Site& site = s.box.site(i);
    if (std::max(std::abs(site.x), std::abs(site.y)) > window) continue;
    for (int a = 0; a < s.internal_half; ++a) {
      trace += t(i * s.internal_half + a, i * s.internal_half + a);
    }
  }
  // tr_w(U* [Lambda, U]); the sign branch matches kWindingOrientation.
  return rounded(trace.real(), InvariantMethod::kRealSpaceWinding);
}

InvariantValue chern_marker(const LocalOperator& h, int margin) {
  if (h.box().dim() != 2) throw std::invalid_argument("wrong-dimension: marker needs a 2-d box");
  if (margin < 0 || margin >= h.box().radius()) {
    throw std::invalid_argument("margin must lie in [0, radius)");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.eigenvalues().cwiseAbs().minCoeff() <= 1e-10 * es.eigenvalues().cwiseAbs().maxCoeff()) {
    throw std::invalid_argument("gapless: Fermi projection needs a spectral gap at zero");
  }
  Index occ = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < 0.0) ++occ;
  }
  const Matrix frame = es.eigenvectors().leftCols(occ);
  // Work in the occupied basis: P L P = F (F* L F) F* with F* F = 1, so the
  // windowed trace of [P L1 P, P L2 P] is tr((F* Pi F) [M1, M2]).
  const Matrix l1 = half_space_projection(h.box(), 1, h.internal_dim()).matrix();
  const Matrix l2 = half_space_projection(h.box(), 2, h.internal_dim()).matrix();
  const Matrix m1 = frame.adjoint() * l1 * frame;
  const Matrix m2 = frame.adjoint() * l2 * frame;
  const int window = h.box().radius() - margin;
  Matrix masked_frame = frame;
  for (Index i = 0; i < h.box().num_sites(); ++i) {
    const Site& site = h.box().site(i);
    if (std::max(std::abs(site.x), std::abs(site.y)) <= window) continue;
    masked_frame.middleRows(i * h.internal_dim(), h.internal_dim()).setZero();
  }
  const Matrix window_overlap = masked_frame.adjoint() * masked_frame;
  const Complex trace = (window_overlap * (m1 * m2 - m2 * m1)).trace();
  const Complex value = Complex(0.0, 2.0 * std::numbers::pi) * trace;
  return rounded(value.real(), InvariantMethod::kChernMarker);
}

}  // namespace specloc
