#include "specloc/bounds.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "specloc/dense.hpp"
#include "specloc/inertia.hpp"
#include "specloc/lattice.hpp"

namespace specloc {

namespace {

constexpr double kRelSlack = 1e-10;

Matrix interior_projector(const LatticeBox& box, int internal_dim, int interior_radius) {
  const Index n = box.num_sites() * internal_dim;
  Matrix p = Matrix::Zero(n, n);
  for (Index i = 0; i < box.num_sites(); ++i) {
    const Site& s = box.site(i);
    if (std::max(std::abs(s.x), std::abs(s.y)) > interior_radius) continue;
    for (int a = 0; a < internal_dim; ++a) p(i * internal_dim + a, i * internal_dim + a) = 1.0;
  }
  return p;
}

Matrix position_diagonal(const LocalOperator& op, const PositionFunction& fun) {
  const Index n = op.dim();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < op.box().num_sites(); ++i) {
    const Complex v = position_value(op.box().site(i), fun);
    for (int a = 0; a < op.internal_dim(); ++a) {
      d(i * op.internal_dim() + a, i * op.internal_dim() + a) = v;
    }
  }
  return d;
}

Matrix coordinate_diagonal(const LocalOperator& op, int axis) {
  const Index n = op.dim();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < op.box().num_sites(); ++i) {
    const Site& s = op.box().site(i);
    const double c = axis == 1 ? s.x : s.y;
    for (int a = 0; a < op.internal_dim(); ++a) {
      d(i * op.internal_dim() + a, i * op.internal_dim() + a) = c;
    }
  }
  return d;
}

BoundReport make_report(std::string lemma, double lhs, double rhs) {
  BoundReport r{std::move(lemma), lhs, rhs, false};
  r.pass = report_passes(lhs, rhs);
  return r;
}

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

Matrix random_hermitian(std::mt19937_64& rng, Index n) {
  Matrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint()).eval();
}

Matrix random_invertible(std::mt19937_64& rng, Index n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    if (gap(m) > 0.05) return m;
  }
}

}  // namespace

bool report_passes(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return rhs - lhs >= -kRelSlack * scale;
}

BoundReport check_holmgren_commutator(const LocalOperator& a, const LocalityBudget& budget,
                                      int axis) {
  if (axis < 1 || axis > a.box().dim()) throw std::invalid_argument("invalid-axis");
  const LocalityBudget measured = estimate_locality(a, budget.decay);
  if (measured.amplitude > budget.amplitude * (1.0 + 1e-12)) {
    throw std::invalid_argument("budget-violated: measured amplitude exceeds the budget");
  }
  const int d = a.box().dim();
  const double mu = budget.decay;
  const int depth = static_cast<int>(std::ceil(5.0 / mu));
  const int interior = std::max(0, a.box().radius() - depth);
  const Matrix p = interior_projector(a.box(), a.internal_dim(), interior);
  const Matrix x = coordinate_diagonal(a, axis);
  const Matrix comm = a.matrix() * x - x * a.matrix();
  const double lhs = operator_norm(p * comm * p);
  const double nu = mu / std::sqrt(static_cast<double>(d));
  const double rhs = budget.amplitude * std::pow(1.0 / std::tanh(0.5 * nu), d - 1) /
                     (std::cosh(nu) - 1.0);
  return make_report("A1.holmgren_commutator", lhs, rhs);
}

std::vector<BoundReport> check_fl_commutator(const LocalOperator& a, const LocalityBudget& budget,
                                             int ell) {
  if (a.box().dim() != 1) throw std::invalid_argument("wrong-dimension: this check is 1-d");
  const LocalityBudget measured = estimate_locality(a, budget.decay);
  if (measured.amplitude > budget.amplitude * (1.0 + 1e-12)) {
    throw std::invalid_argument("budget-violated: measured amplitude exceeds the budget");
  }
  const Matrix f = position_diagonal(a, PositionFunction{PositionKind::kClampedRadial, 1, ell});
  const Matrix sgn = position_diagonal(a, PositionFunction{PositionKind::kSign, 1, ell});
  const Matrix comm_f = a.matrix() * f - f * a.matrix();
  const Matrix comm_sgn = a.matrix() * sgn - sgn * a.matrix();
  const double n = a.internal_dim();
  const double norm_a = operator_norm(a.matrix());

  std::vector<BoundReport> out;
  out.push_back(make_report("A2.operator_norm", operator_norm(comm_f), budget.derived()));
  const double rhs1 = ell * trace_norm(comm_sgn) + 2.0 * n * norm_a * ell * (2.0 * ell + 1.0) +
                      4.0 * n * norm_a;
  out.push_back(make_report("A2.trace_norm", trace_norm(comm_f), rhs1));
  return out;
}

std::vector<BoundReport> check_fl_commutator_2d(const LocalOperator& a,
                                                const LocalityBudget& budget, int ell) {
  if (a.box().dim() != 2) throw std::invalid_argument("wrong-dimension: this check is 2-d");
  const LocalityBudget measured = estimate_locality(a, budget.decay);
  if (measured.amplitude > budget.amplitude * (1.0 + 1e-12)) {
    throw std::invalid_argument("budget-violated: measured amplitude exceeds the budget");
  }
  const Matrix f = position_diagonal(a, PositionFunction{PositionKind::kClampedSquare, 2, ell});
  const Matrix phase =
      position_diagonal(a, PositionFunction{PositionKind::kLaughlinPhase, 2, ell});
  const Matrix comm_f = a.matrix() * f - f * a.matrix();
  const Matrix comm_l = a.matrix() * phase - phase * a.matrix();
  const double n = a.internal_dim();
  const double norm_a = operator_norm(a.matrix());

  std::vector<BoundReport> out;
  const double d1 = budget.derived();
  out.push_back(make_report("A3.operator_norm", operator_norm(comm_f), d1 * d1));
  const double rhs3 = ell * schatten_norm(comm_l, 3.0) +
                      2.0 * n * norm_a * ell * (2.0 * ell + 1.0) * (2.0 * ell + 1.0) +
                      4.0 * n * norm_a;
  out.push_back(make_report("A3.schatten3_norm", schatten_norm(comm_f, 3.0), rhs3));
  return out;
}

std::vector<BoundReport> check_gap_lemmas(int dim_budget, int draws, std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("draws must be >= 1");
  if (dim_budget < 4) throw std::invalid_argument("dimension budget must be >= 4");
  std::vector<BoundReport> out;

  // Deterministic witness attaining gap(A+B) = gap(A) - |B|.
  {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    b(0, 0) = b(1, 1) = 0.5;
    const double lhs = gap(a) - operator_norm(b);
    const double rhs = gap((a + b).eval());
    BoundReport tight{"B1.gapAplusB.tight", lhs, rhs, std::abs(rhs - lhs) < 1e-12};
    out.push_back(tight);
  }

  for (int iter = 0; iter < draws; ++iter) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(iter) * 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<Index> dim_dist(2, dim_budget);
    const Index n = dim_dist(rng);

    {  // B.1 (i): gap(A) = sqrt(gap(A* A))
      const Matrix a = random_invertible(rng, n);
      const double lhs = gap(a);
      const double rhs = std::sqrt(gap((a.adjoint() * a).eval()));
      out.push_back(make_report("B1.gap_squared.le", lhs, rhs));
      out.push_back(make_report("B1.gap_squared.ge", rhs, lhs));
    }
    {  // B.1 (ii): gap(A) gap(B) <= gap(AB) <= gap(A) |B|
      const Matrix a = random_invertible(rng, n);
      const Matrix b = random_invertible(rng, n);
      const double g = gap((a * b).eval());
      out.push_back(make_report("B1.gapAB.lower", gap(a) * gap(b), g));
      out.push_back(make_report("B1.gapAB.upper", g, gap(a) * operator_norm(b)));
    }
    {  // B.1 (iii): gap(A) - |B| <= gap(A+B) <= gap(A) + |B|
      const Matrix a = random_matrix(rng, n, n);
      const Matrix b = random_matrix(rng, n, n);
      const double g = gap((a + b).eval());
      out.push_back(make_report("B1.gapAplusB.lower", gap(a) - operator_norm(b), g));
      out.push_back(make_report("B1.gapAplusB.upper", g, gap(a) + operator_norm(b)));
    }
    {  // B.1 (iv): non-negative A, B: gap(A+B) >= gap(A) + gap(B)
      const Matrix ra = random_matrix(rng, n, n);
      const Matrix rb = random_matrix(rng, n, n);
      const Matrix a = (ra.adjoint() * ra).eval();
      const Matrix b = (rb.adjoint() * rb).eval();
      out.push_back(make_report("B1.gapAplusBpositive", gap(a) + gap(b), gap((a + b).eval())));
    }
    {  // B.1 (v): gap(A (+) D) = min(gap A, gap D)
      const Matrix a = random_matrix(rng, n, n);
      const Matrix d = random_matrix(rng, n, n);
      Matrix s = Matrix::Zero(2 * n, 2 * n);
      s.topLeftCorner(n, n) = a;
      s.bottomRightCorner(n, n) = d;
      const double lhs = gap(s);
      const double rhs = std::min(gap(a), gap(d));
      out.push_back(make_report("B1.gapDirectSum.le", lhs, rhs));
      out.push_back(make_report("B1.gapDirectSum.ge", rhs, lhs));
    }

    const auto assemble_block = [](const Matrix& a, const Matrix& b, const Matrix& d) {
      const Index na = a.rows(), nd = d.rows();
      Matrix h = Matrix::Zero(na + nd, na + nd);
      h.topLeftCorner(na, na) = a;
      h.topRightCorner(na, nd) = b;
      h.bottomLeftCorner(nd, na) = b.adjoint();
      h.bottomRightCorner(nd, nd) = d;
      return h;
    };

    {  // B.2: block gaps
      const Matrix a = random_hermitian(rng, n);
      const Matrix d0 = random_hermitian(rng, n);
      const Matrix b = 0.3 * random_matrix(rng, n, n);
      // push D's spectrum away from zero so the Schur bounds are non-vacuous
      const Matrix d = (d0 + 4.0 * Matrix::Identity(n, n)).eval();
      const Matrix h = assemble_block(a, b, d);
      const double gh = hermitian_gap(h);
      out.push_back(make_report("B2.block_gap",
                                std::min(hermitian_gap(a), hermitian_gap(d)) - operator_norm(b),
                                gh));
      const Matrix dinv = d.inverse();
      const Matrix schur = (a - b * dinv * b.adjoint()).eval();
      const double factor = 1.0 + operator_norm((b * dinv).eval());
      out.push_back(make_report(
          "B2.upper_schur", gh,
          std::min(hermitian_gap(d), hermitian_gap(schur)) * factor * factor));
      if (hermitian_gap(a) <= hermitian_gap(d)) {
        out.push_back(make_report(
            "B2.block_gap_D",
            hermitian_gap(a) - std::sqrt(hermitian_gap(a) / hermitian_gap(d)) * operator_norm(b),
            gh));
      }
    }

    {  // B.3: invertibility of the cut interpolation under the gap hypothesis
      const Matrix a = random_hermitian(rng, n);
      const Matrix b = 0.5 * random_matrix(rng, n, n);
      Matrix d = random_hermitian(rng, n);
      // enforce gap(D) > |B| max(1, |B| / (gap(H_1)/4)) by shifting D
      for (double shift = 4.0;; shift *= 2.0) {
        const Matrix ds = (d + shift * Matrix::Identity(n, n)).eval();
        const Matrix h = assemble_block(a, b, ds);
        const double gh1 = hermitian_gap(h);
        if (gh1 <= 1e-8) continue;
        const double nb = operator_norm(b);
        if (hermitian_gap(ds) > nb * std::max(1.0, nb / (0.25 * gh1))) {
          d = ds;
          break;
        }
        if (shift > 1e6) throw std::runtime_error("could not satisfy the cut hypothesis");
      }
      double min_gap = std::numeric_limits<double>::infinity();
      for (int k = 0; k <= 100; ++k) {
        const double s = k / 100.0;
        min_gap = std::min(min_gap, hermitian_gap(assemble_block(a, (s * b).eval(), d)));
      }
      out.push_back(make_report("B3.invertible_cut", 1e-8, min_gap));
    }

    {  // B.4: traceless block bound
      const Matrix a = random_hermitian(rng, n);
      const Matrix b = random_matrix(rng, n, n);
      Matrix l = Matrix::Zero(2 * n, 2 * n);
      l.topLeftCorner(n, n) = a;
      l.topRightCorner(n, n) = b.adjoint();
      l.bottomLeftCorner(n, n) = b;
      l.bottomRightCorner(n, n) = -a;
      const double comm = operator_norm((a * b - b * a).eval());
      const double ga = hermitian_gap(a);
      const double gb = gap(b);
      const double lhs = std::sqrt(std::max(0.0, ga * ga + gb * gb - comm));
      out.push_back(make_report("B4.block_traceless", lhs, hermitian_gap(l)));
    }
  }
  return out;
}

LocalOperator random_local_operator(const LatticeBox& box, int internal_dim, double decay,
                                    std::uint64_t seed, bool hermitian, double target_amplitude) {
  std::mt19937_64 rng(seed);
  const Index ns = box.num_sites();
  const Index n = ns * internal_dim;
  Matrix m(n, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Index i = 0; i < ns; ++i) {
    const Site& si = box.site(i);
    for (Index j = 0; j < ns; ++j) {
      const Site& sj = box.site(j);
      const double dx = si.x - sj.x;
      const double dy = si.y - sj.y;
      const double envelope = std::exp(-decay * std::sqrt(dx * dx + dy * dy));
      for (int a = 0; a < internal_dim; ++a) {
        for (int b = 0; b < internal_dim; ++b) {
          m(i * internal_dim + a, j * internal_dim + b) =
              envelope * Complex(gauss(rng), gauss(rng));
        }
      }
    }
  }
  if (hermitian) m = 0.5 * (m + m.adjoint()).eval();
  LocalOperator raw(box, internal_dim, std::move(m), hermitian);
  const double c = estimate_locality(raw, decay).amplitude;
  Matrix scaled = raw.matrix() * (target_amplitude / c);
  return LocalOperator(box, internal_dim, std::move(scaled), hermitian);
}

}  // namespace specloc
