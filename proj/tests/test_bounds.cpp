#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specloc/bounds.hpp"
#include "specloc/dense.hpp"
#include "specloc/inertia.hpp"
#include "specloc/lattice.hpp"
#include "specloc/localizer.hpp"
#include "specloc/models.hpp"

using namespace specloc;

namespace {

/// Hopping operator on the chain: amplitude on the first superdiagonal only.
LocalOperator shift_operator(int ell, double amplitude) {
  const LatticeBox box(1, ell);
  const Index n = box.num_sites();
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) m(i, i + 1) = amplitude;
  return LocalOperator(box, 1, std::move(m));
}

}  // namespace

TEST_CASE("holmgren commutator bound for the shift") {
  // |[S, X]| = 1 for the unit shift; the budget (C = 2, mu = ln 2) gives
  // rhs = 2 / (cosh(ln 2) - 1) = 8
  const auto a = shift_operator(50, 1.0);
  const LocalityBudget budget{2.0, std::log(2.0)};
  const auto r = check_holmgren_commutator(a, budget, 1);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(r.pass);
}

TEST_CASE("diagonal operators commute with the position") {
  const LatticeBox box(1, 10);
  std::vector<Complex> vals(static_cast<std::size_t>(box.num_sites()), Complex(1.0, 0));
  const auto d = LocalOperator::Diagonal(box, 1, vals);
  const auto r = check_holmgren_commutator(d, LocalityBudget{1.0, 1.0}, 1);
  CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.pass);
}

TEST_CASE("budget violations are rejected") {
  const auto a = shift_operator(10, 1.0);
  CHECK_THROWS_WITH_AS(check_holmgren_commutator(a, LocalityBudget{1.0, 1.0}, 1),
                       doctest::Contains("budget-violated"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(check_fl_commutator(a, LocalityBudget{1.0, 1.0}, 4),
                       doctest::Contains("budget-violated"), std::invalid_argument);
}

TEST_CASE("randomized holmgren suites pass in both dimensions") {
  for (int draw = 0; draw < 25; ++draw) {
    const auto a1 =
        random_local_operator(LatticeBox(1, 10), 2, 1.0, 100 + static_cast<std::uint64_t>(draw), true);
    CHECK(check_holmgren_commutator(a1, estimate_locality(a1, 1.0), 1).pass);
    const auto a2 =
        random_local_operator(LatticeBox(2, 4), 1, 1.0, 200 + static_cast<std::uint64_t>(draw), true);
    CHECK(check_holmgren_commutator(a2, estimate_locality(a2, 1.0), 1).pass);
    CHECK(check_holmgren_commutator(a2, estimate_locality(a2, 1.0), 2).pass);
  }
}

TEST_CASE("clipped-position commutator bound is uniform in ell") {
  const auto a = shift_operator(40, 1.0);
  const LocalityBudget budget{2.0, std::log(2.0)};
  for (int ell = 2; ell <= 40; ell += 2) {
    const auto reports = check_fl_commutator(a, budget, ell);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].lhs <= 8.0 + 1e-12);
    CHECK(reports[0].pass);
    CHECK(reports[1].pass);
  }
}

TEST_CASE("diagonal operators have vanishing clipped commutator") {
  const LatticeBox box(1, 8);
  std::vector<Complex> vals(static_cast<std::size_t>(box.num_sites()), Complex(0.7, 0));
  const auto d = LocalOperator::Diagonal(box, 2, vals);
  const auto reports = check_fl_commutator(d, LocalityBudget{0.7, 1.0}, 4);
  CHECK(reports[0].lhs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(reports[1].lhs == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("randomized clipped-commutator suites, one dimension") {
  for (int draw = 0; draw < 25; ++draw) {
    const auto a =
        random_local_operator(LatticeBox(1, 12), 2, 1.0, 300 + static_cast<std::uint64_t>(draw), true);
    const auto budget = estimate_locality(a, 1.0);
    for (const auto& r : check_fl_commutator(a, budget, 6)) CHECK(r.pass);
  }
}

TEST_CASE("randomized clipped-commutator suites, two dimensions") {
  for (int draw = 0; draw < 25; ++draw) {
    const auto a =
        random_local_operator(LatticeBox(2, 5), 2, 1.0, 400 + static_cast<std::uint64_t>(draw), true);
    const auto budget = estimate_locality(a, 1.0);
    const auto reports = check_fl_commutator_2d(a, budget, 2);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].pass);
    CHECK(reports[1].pass);
  }
  const auto wrong = random_local_operator(LatticeBox(1, 6), 2, 1.0, 1, true);
  CHECK_THROWS_WITH_AS(check_fl_commutator_2d(wrong, estimate_locality(wrong, 1.0), 3),
                       doctest::Contains("wrong-dimension"), std::invalid_argument);
}

TEST_CASE("gap lemma suite passes with a tight witness") {
  const auto reports = check_gap_lemmas(20, 20, 12345);
  int failures = 0;
  bool tight_found = false;
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
    if (r.lemma == "B1.gapAplusB.tight") {
      tight_found = true;
      CHECK(std::abs(r.margin()) < 1e-12);
    }
  }
  CHECK(failures == 0);
  CHECK(tight_found);
  CHECK_THROWS_AS(check_gap_lemmas(20, 0, 1), std::invalid_argument);
}

TEST_CASE("direct-sum gap identity is exact") {
  Matrix a = Matrix::Zero(2, 2), d = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  d(0, 0) = 0.5;
  d(1, 1) = 3.0;
  Matrix s = Matrix::Zero(4, 4);
  s.topLeftCorner(2, 2) = a;
  s.bottomRightCorner(2, 2) = d;
  CHECK(gap(s) == doctest::Approx(std::min(gap(a), gap(d))).epsilon(1e-14));
}

TEST_CASE("traceless block bound on the localizer blocks reproduces the gap estimate") {
  // the d = 1 localizer is [[A, B*], [B, -A]] with A = kappa f_ell(X) and
  // B = (1 - kappa) S; the lemma's bound plus the commutator budget yields
  // the closed-form admissible-kappa estimate
  const int ell = 20;
  const double kappa = 0.05;
  for (auto [v, w] : {std::pair{0.4, 1.0}, std::pair{1.0, 0.4}}) {
    const Model m = make_ssh(v, w);
    const auto h = m.build(LatticeBox(1, ell));
    const auto s = chiral_block(h);
    const Index ns = s.s.rows();

    Matrix a = Matrix::Zero(ns, ns);
    for (Index i = 0; i < ns; ++i) {
      a(i, i) = kappa * f_ell_value(Site{static_cast<int>(i) - ell, 0}, ell).real();
    }
    const Matrix b = ((1.0 - kappa) * s.s).eval();
    Matrix loc = Matrix::Zero(2 * ns, 2 * ns);
    loc.topLeftCorner(ns, ns) = a;
    loc.topRightCorner(ns, ns) = b.adjoint();
    loc.bottomLeftCorner(ns, ns) = b;
    loc.bottomRightCorner(ns, ns) = -a;

    const double comm = operator_norm((a * b - b * a).eval());
    const double lemma_bound =
        std::sqrt(std::max(0.0, hermitian_gap(a) * hermitian_gap(a) + gap(b) * gap(b) - comm));
    CHECK(hermitian_gap(loc) >= lemma_bound - 1e-10);

    // the commutator budget dominates the measured commutator norm
    const auto budget = estimate_locality(h, 1.0);
    CHECK(comm <= kappa * (1.0 - kappa) * budget.derived() + 1e-12);
  }

  // trivial phase: no cut modes, the assembled operator beats the closed-form
  // estimate outright
  const Model trivial = make_ssh(1.0, 0.4);
  const auto h = trivial.build(LatticeBox(1, ell));
  const auto budget = estimate_locality(h, 1.0);
  const auto loc = build_localizer(trivial, ell, kappa);
  const double est = std::sqrt((1.0 - kappa) * (1.0 - kappa) * 0.6 * 0.6 -
                               kappa * (1.0 - kappa) * budget.derived());
  CHECK(hermitian_gap(loc.matrix()) >= est - 1e-10);
}

TEST_CASE("random local operators respect their envelope") {
  const auto a = random_local_operator(LatticeBox(1, 10), 2, 0.8, 9, true);
  CHECK(estimate_locality(a, 0.8).amplitude == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(max_abs(a.matrix() - a.matrix().adjoint().eval()) == 0.0);
  const auto g = random_local_operator(LatticeBox(1, 10), 2, 0.8, 9, false);
  CHECK(max_abs(g.matrix() - g.matrix().adjoint().eval()) > 0.0);
}
