#include "specloc/operators.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specloc/dense.hpp"
#include "specloc/util.hpp"

namespace specloc {

namespace {

constexpr double kFlagTolerance = 1e-13;

}  // namespace

LocalOperator::LocalOperator(LatticeBox box, int internal_dim, Matrix entries, bool hermitian,
                             bool chiral)
    : box_(std::move(box)), internal_dim_(internal_dim), entries_(std::move(entries)),
      hermitian_(hermitian), chiral_(chiral) {
  if (internal_dim_ < 1) throw std::invalid_argument("internal dimension must be >= 1");
  const Index n = box_.num_sites() * internal_dim_;
  if (entries_.rows() != n || entries_.cols() != n) {
    throw std::invalid_argument("entry matrix is " + std::to_string(entries_.rows()) + "x" +
                                std::to_string(entries_.cols()) + ", expected " +
                                std::to_string(n));
  }
  const double scale = max_abs(entries_);
  if (hermitian_ && scale > 0.0 &&
      max_abs(entries_ - entries_.adjoint().eval()) > kFlagTolerance * scale) {
    throw std::invalid_argument("not-hermitian: flag contradicts entries");
  }
  if (chiral_) {
    if (internal_dim_ % 2 != 0)
      throw std::invalid_argument("not-chiral: chiral grading needs an even internal dimension");
    const int half = internal_dim_ / 2;
    double defect = 0.0;
    for (Index i = 0; i < box_.num_sites(); ++i) {
      for (Index j = 0; j < box_.num_sites(); ++j) {
        const Matrix b = block(i, j);
        defect = std::max(defect, max_abs(b.topLeftCorner(half, half)));
        defect = std::max(defect, max_abs(b.bottomRightCorner(half, half)));
      }
    }
    if (scale > 0.0 && defect > kFlagTolerance * scale) {
      throw std::invalid_argument("not-chiral: diagonal grading blocks do not vanish");
    }
  }
}

LocalOperator LocalOperator::Diagonal(const LatticeBox& box, int internal_dim,
                                      const std::vector<Complex>& site_values) {
  if (static_cast<Index>(site_values.size()) != box.num_sites()) {
    throw std::invalid_argument("diagonal value count does not match the box");
  }
  const Index n = box.num_sites() * internal_dim;
  Matrix m = Matrix::Zero(n, n);
  bool real = true;
  for (Index i = 0; i < box.num_sites(); ++i) {
    const Complex v = site_values[static_cast<std::size_t>(i)];
    if (v.imag() != 0.0) real = false;
    for (int a = 0; a < internal_dim; ++a) {
      m(i * internal_dim + a, i * internal_dim + a) = v;
    }
  }
  return LocalOperator(box, internal_dim, std::move(m), /*hermitian=*/real);
}

ChiralBlock chiral_block(const LocalOperator& h) {
  if (!h.chiral()) throw std::invalid_argument("not-chiral: operator lacks the chiral flag");
  const int half = h.internal_dim() / 2;
  const Index ns = h.box().num_sites();
  Matrix s(ns * half, ns * half);
  for (Index i = 0; i < ns; ++i) {
    for (Index j = 0; j < ns; ++j) {
      s.block(i * half, j * half, half, half) =
          h.matrix().block(i * h.internal_dim() + half, j * h.internal_dim(), half, half);
    }
  }
  return ChiralBlock{h.box(), half, std::move(s)};
}

LocalOperator assemble_chiral(const ChiralBlock& b) {
  const Index ns = b.box.num_sites();
  const int n = 2 * b.internal_half;
  Matrix m = Matrix::Zero(ns * n, ns * n);
  for (Index i = 0; i < ns; ++i) {
    for (Index j = 0; j < ns; ++j) {
      const auto sij = b.s.block(i * b.internal_half, j * b.internal_half, b.internal_half,
                                 b.internal_half);
      m.block(i * n + b.internal_half, j * n, b.internal_half, b.internal_half) = sij;
      // adjoint block: (S^*)_{ij} = (S_{ji})^*
      const auto sji = b.s.block(j * b.internal_half, i * b.internal_half, b.internal_half,
                                 b.internal_half);
      m.block(i * n, j * n + b.internal_half, b.internal_half, b.internal_half) = sji.adjoint();
    }
  }
  return LocalOperator(b.box, n, std::move(m), /*hermitian=*/true, /*chiral=*/true);
}

double LocalityBudget::derived() const { return amplitude / (std::cosh(decay) - 1.0); }

LocalityBudget estimate_locality(const LocalOperator& op, double decay) {
  if (decay <= 0.0) throw std::invalid_argument("decay rate must be positive");
  const Index ns = op.box().num_sites();
  double c = 0.0;
  for (Index i = 0; i < ns; ++i) {
    const Site& si = op.box().site(i);
    for (Index j = 0; j < ns; ++j) {
      const Site& sj = op.box().site(j);
      const Matrix b = op.block(i, j);
      if (max_abs(b) == 0.0) continue;
      const double dx = si.x - sj.x;
      const double dy = si.y - sj.y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      c = std::max(c, operator_norm(b) * std::exp(decay * dist));
    }
  }
  return LocalityBudget{c, decay};
}

Compression compress(const LocalOperator& op, const LatticeBox& inner) {
  if (inner.dim() != op.box().dim() || inner.radius() > op.box().radius()) {
    throw std::invalid_argument("box-not-contained: inner box does not fit inside the operator box");
  }
  const int n = op.internal_dim();
  std::vector<Index> inner_dense, outer_dense;
  std::vector<Index> inner_sites;
  for (Index i = 0; i < op.box().num_sites(); ++i) {
    const bool in = inner.contains(op.box().site(i));
    for (int a = 0; a < n; ++a) {
      (in ? inner_dense : outer_dense).push_back(i * n + a);
    }
    if (in) inner_sites.push_back(i);
  }
  const Index ni = static_cast<Index>(inner_dense.size());
  const Index no = static_cast<Index>(outer_dense.size());

  Matrix inner_m(ni, ni);
  for (Index r = 0; r < ni; ++r)
    for (Index c = 0; c < ni; ++c) inner_m(r, c) = op.matrix()(inner_dense[r], inner_dense[c]);
  Matrix outer_m(no, no);
  for (Index r = 0; r < no; ++r)
    for (Index c = 0; c < no; ++c) outer_m(r, c) = op.matrix()(outer_dense[r], outer_dense[c]);
  Matrix coupling(ni, no);
  for (Index r = 0; r < ni; ++r)
    for (Index c = 0; c < no; ++c) coupling(r, c) = op.matrix()(inner_dense[r], outer_dense[c]);

  LocalOperator inner_op(inner, n, std::move(inner_m), op.hermitian(), op.chiral());
  return Compression{std::move(inner_op), std::move(outer_m), std::move(coupling),
                     std::move(inner_dense), std::move(outer_dense),
                     op.box().num_sites() * n};
}

Matrix reassemble(const Compression& c, double coupling_scale) {
  Matrix m = Matrix::Zero(c.parent_dim, c.parent_dim);
  const Index ni = static_cast<Index>(c.inner_dense.size());
  const Index no = static_cast<Index>(c.outer_dense.size());
  for (Index r = 0; r < ni; ++r)
    for (Index q = 0; q < ni; ++q) m(c.inner_dense[r], c.inner_dense[q]) = c.inner.matrix()(r, q);
  for (Index r = 0; r < no; ++r)
    for (Index q = 0; q < no; ++q) m(c.outer_dense[r], c.outer_dense[q]) = c.outer(r, q);
  for (Index r = 0; r < ni; ++r) {
    for (Index q = 0; q < no; ++q) {
      const Complex v = coupling_scale * c.coupling(r, q);
      m(c.inner_dense[r], c.outer_dense[q]) = v;
      m(c.outer_dense[q], c.inner_dense[r]) = std::conj(v);
    }
  }
  return m;
}

Matrix polar_part(const Matrix& m, double rel_tolerance) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0 || sv(sv.size() - 1) <= rel_tolerance * sv(0)) {
    throw std::invalid_argument("singular-input: polar part needs an invertible matrix");
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix polar_part(const Matrix& m) { return polar_part(m, 1e-12); }

ChiralBlock flatten_block(const ChiralBlock& s) {
  Eigen::BDCSVD<Matrix> svd(s.s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) {
    throw std::invalid_argument("singular-input: chiral block is identically zero");
  }
  return ChiralBlock{s.box, s.internal_half,
                     (svd.matrixU() * svd.matrixV().adjoint()).eval()};
}

LocalOperator build_ssh(const LatticeBox& box, double v, double w, double disorder,
                        std::uint64_t seed) {
  if (box.dim() != 1) throw std::invalid_argument("wrong-dimension: SSH chain needs a 1-d box");
  if (disorder < 0.0) throw std::invalid_argument("disorder amplitude must be >= 0");
  const int n = 2;  // internal: 0 = plus sublattice, 1 = minus sublattice
  const Index ns = box.num_sites();
  Matrix m = Matrix::Zero(ns * n, ns * n);
  for (Index i = 0; i < ns; ++i) {
    const int cell = box.site(i).x;
    const double vi = v * (1.0 + disorder * keyed_uniform(seed, cell, 0));
    // intra-cell hop: plus(cell) <-> minus(cell)
    m(i * n + 1, i * n + 0) = vi;
    m(i * n + 0, i * n + 1) = vi;
    const Site next{cell + 1, 0};
    if (box.contains(next)) {
      const Index j = box.index_of(next);
      const double wi = w * (1.0 + disorder * keyed_uniform(seed, cell, 1));
      // inter-cell hop: plus(cell) <-> minus(cell + 1).  This anchoring makes
      // half the localizer signature equal +1 in the v < w phase.
      m(j * n + 1, i * n + 0) = wi;
      m(i * n + 0, j * n + 1) = wi;
    }
  }
  return LocalOperator(box, n, std::move(m), /*hermitian=*/true, /*chiral=*/true);
}

LocalOperator build_qwz(const LatticeBox& box, double mass) {
  if (box.dim() != 2) throw std::invalid_argument("wrong-dimension: QWZ model needs a 2-d box");
  const int n = 2;
  const Index ns = box.num_sites();
  const Complex i1(0.0, 1.0);
  Matrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -i1, i1, 0;
  s3 << 1, 0, 0, -1;
  // Hopping blocks carried by the +e1/+e2 bonds; h(k) = sum_d T_d e^{-ik.d}.
  const Matrix tx = 0.5 * i1 * s1 - 0.5 * s3;
  const Matrix ty = 0.5 * i1 * s2 - 0.5 * s3;
  Matrix m = Matrix::Zero(ns * n, ns * n);
  for (Index i = 0; i < ns; ++i) {
    const Site& s = box.site(i);
    m.block(i * n, i * n, n, n) = mass * s3;
    const Site right{s.x + 1, s.y};
    if (box.contains(right)) {
      const Index j = box.index_of(right);
      m.block(j * n, i * n, n, n) = tx;
      m.block(i * n, j * n, n, n) = tx.adjoint();
    }
    const Site up{s.x, s.y + 1};
    if (box.contains(up)) {
      const Index j = box.index_of(up);
      m.block(j * n, i * n, n, n) = ty;
      m.block(i * n, j * n, n, n) = ty.adjoint();
    }
  }
  return LocalOperator(box, n, std::move(m), /*hermitian=*/true);
}

}  // namespace specloc
