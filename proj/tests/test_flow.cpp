#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "specloc/dense.hpp"
#include "specloc/flow.hpp"
#include "specloc/lattice.hpp"
#include "specloc/models.hpp"
#include "specloc/operators.hpp"

using namespace specloc;

namespace {

Matrix random_hermitian(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return (0.5 * (m + m.adjoint())).eval();
}

Matrix random_unitary(std::mt19937_64& rng, Index n) {
  return polar_part((random_hermitian(rng, n) + Complex(0, 1) * random_hermitian(rng, n) +
                     8.0 * Matrix::Identity(n, n))
                        .eval());
}

/// Self-adjoint unitary pair with planted eigenspace intersections:
/// `up` directions in E_-1(Q0)^E_1(Q1), `down` in E_1(Q0)^E_-1(Q1); the rest
/// of the spectrum is drawn independently for the two operators.
std::pair<Matrix, Matrix> planted_pair(std::mt19937_64& rng, Index n, int up, int down) {
  const Matrix frame = random_unitary(rng, n);
  std::uniform_int_distribution<int> coin(0, 1);
  Matrix d0 = Matrix::Zero(n, n), d1 = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (i < up) {
      d0(i, i) = -1.0;
      d1(i, i) = 1.0;
    } else if (i < up + down) {
      d0(i, i) = 1.0;
      d1(i, i) = -1.0;
    } else {
      const double s = coin(rng) ? 1.0 : -1.0;
      d0(i, i) = s;
      d1(i, i) = s;  // aligned: contributes no kernel to Q0 + Q1
    }
  }
  return {(frame * d0 * frame.adjoint()).eval(), (frame * d1 * frame.adjoint()).eval()};
}

Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("single crossing of a scalar path") {
  const auto r = spectral_flow(linear_path(diag({-1.0}), diag({1.0}), 11));
  CHECK(r.flow == 1);
  REQUIRE(r.crossings.size() == 1);
  CHECK(r.crossings[0].direction == 1);
  CHECK(r.crossings[0].multiplicity == 1);
  CHECK(r.crossings[0].t_lo <= 0.5);
  CHECK(r.crossings[0].t_hi >= 0.5 - 1e-6);
  CHECK(r.crossings[0].t_hi - r.crossings[0].t_lo <= 1e-6);
}

TEST_CASE("pauli path has no flow") {
  Matrix s1(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  const auto r = spectral_flow(linear_path(s1, s3, 11));
  CHECK(r.flow == 0);
  CHECK(r.crossings.empty());
}

TEST_CASE("concatenation is additive when the midpoint is invertible") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 5;
    const Matrix a = random_hermitian(rng, n) + 2.0 * Matrix::Identity(n, n);
    const Matrix b = random_hermitian(rng, n) - 2.0 * Matrix::Identity(n, n);
    const Matrix mid = (0.5 * (a + b)).eval();
    if (hermitian_gap(mid) < 1e-6) continue;
    const int whole = spectral_flow(linear_path(a, b, 21)).flow;
    const int first = spectral_flow(linear_path(a, mid, 11)).flow;
    const int second = spectral_flow(linear_path(mid, b, 11)).flow;
    CHECK(whole == first + second);
  }
}

TEST_CASE("direct sums add their flows") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 4;
    const Matrix a1 = random_hermitian(rng, n) + 1.5 * Matrix::Identity(n, n);
    const Matrix b1 = random_hermitian(rng, n) - 1.5 * Matrix::Identity(n, n);
    const Matrix a2 = random_hermitian(rng, n) + 1.5 * Matrix::Identity(n, n);
    const Matrix b2 = random_hermitian(rng, n) - 1.5 * Matrix::Identity(n, n);
    Matrix sa = Matrix::Zero(2 * n, 2 * n), sb = Matrix::Zero(2 * n, 2 * n);
    sa.topLeftCorner(n, n) = a1;
    sa.bottomRightCorner(n, n) = a2;
    sb.topLeftCorner(n, n) = b1;
    sb.bottomRightCorner(n, n) = b2;
    CHECK(spectral_flow(linear_path(sa, sb, 21)).flow ==
          spectral_flow(linear_path(a1, b1, 11)).flow +
              spectral_flow(linear_path(a2, b2, 11)).flow);
  }
}

TEST_CASE("flow is conjugation-invariant and odd under negation") {
  std::mt19937_64 rng(33);
  const Index n = 6;
  const Matrix a = random_hermitian(rng, n) + 2.0 * Matrix::Identity(n, n);
  const Matrix b = random_hermitian(rng, n) - 2.0 * Matrix::Identity(n, n);
  const int base = spectral_flow(linear_path(a, b, 15)).flow;
  const Matrix u = random_unitary(rng, n);
  CHECK(spectral_flow(linear_path((u * a * u.adjoint()).eval(), (u * b * u.adjoint()).eval(), 15))
            .flow == base);
  CHECK(spectral_flow(linear_path((-a).eval(), (-b).eval(), 15)).flow == -base);
}

TEST_CASE("flow equals half the signature difference") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 8;
    const Matrix a = random_hermitian(rng, n);
    const Matrix b = random_hermitian(rng, n);
    if (hermitian_gap(a) < 1e-3 || hermitian_gap(b) < 1e-3) continue;
    const auto r = spectral_flow(linear_path(a, b, 41));
    CHECK(2 * r.flow == r.end.signature() - r.start.signature());
    int counted = 0;
    for (const auto& c : r.crossings) counted += c.direction * c.multiplicity;
    CHECK(counted == r.flow);
  }
}

TEST_CASE("singular endpoints are rejected") {
  CHECK_THROWS_WITH_AS(spectral_flow(linear_path(diag({0.0, 1.0}), diag({1.0, 1.0}), 5)),
                       doctest::Contains("endpoint-singular"), std::invalid_argument);
}

TEST_CASE("an eigenvalue pinned at zero defeats the crossing bisection") {
  // the eigenvalue sits exactly at zero over [0.3, 0.7]: every nudged sample
  // around the middle grid point lands inside the pinned stretch
  HermitianPath path;
  path.at = [](double t) {
    Matrix m(1, 1);
    m(0, 0) = t < 0.3 ? 5.0 * (t - 0.3) : (t > 0.7 ? 5.0 * (t - 0.7) : 0.0);
    return m;
  };
  path.grid = {0.0, 0.5, 1.0};
  CHECK_THROWS_WITH_AS(spectral_flow(path), doctest::Contains("unresolved-crossing"),
                       std::runtime_error);
}

TEST_CASE("flatten endpoints") {
  SUBCASE("hermitian sign function") {
    const auto [q0, q1] = flatten_endpoints(diag({3.0, -2.0}), Matrix::Identity(2, 2).eval());
    CHECK(std::abs(q1(0, 0) - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(q1(1, 1) - Complex(-1, 0)) < 1e-14);
  }
  SUBCASE("unitary B is its own polar part") {
    std::mt19937_64 rng(35);
    const Matrix u = random_unitary(rng, 4);
    const auto [q0, q1] = flatten_endpoints(diag({1.0, -1.0, 2.0, -2.0}), u);
    CHECK((q0.bottomLeftCorner(4, 4) - u).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("both outputs are self-adjoint unitaries") {
    std::mt19937_64 rng(36);
    const Matrix a = random_hermitian(rng, 5) + 3.0 * Matrix::Identity(5, 5);
    const Matrix b = random_hermitian(rng, 5) + Complex(0, 1) * random_hermitian(rng, 5) +
                     6.0 * Matrix::Identity(5, 5);
    const auto [q0, q1] = flatten_endpoints(a, b);
    CHECK((q0 * q0 - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((q1 * q1 - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs(q0 - q0.adjoint().eval()) < 1e-12);
    CHECK(max_abs(q1 - q1.adjoint().eval()) < 1e-12);
  }
  SUBCASE("the flat grading is twice the spectral projection minus one") {
    std::mt19937_64 rng(37);
    const Matrix a = random_hermitian(rng, 6) + 0.5 * Matrix::Identity(6, 6);
    const auto [q0, q1] = flatten_endpoints(a, Matrix::Identity(6, 6).eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Matrix lambda = Matrix::Zero(6, 6);
    for (Index i = 0; i < 6; ++i) {
      if (es.eigenvalues()(i) >= 0) {
        lambda += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      }
    }
    CHECK((q1.topLeftCorner(6, 6) - (2.0 * lambda - Matrix::Identity(6, 6))).cwiseAbs().maxCoeff() <
          1e-12);
  }
  SUBCASE("singular inputs are rejected") {
    CHECK_THROWS_WITH_AS(flatten_endpoints(diag({1.0, 0.0}), Matrix::Identity(2, 2).eval()),
                         doctest::Contains("singular-input"), std::invalid_argument);
  }
}

TEST_CASE("fredholm pair index of pauli pairs") {
  Matrix s1(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  CHECK(fredholm_pair_index(s1, s3) == 0);
  CHECK(fredholm_pair_index((-s3).eval(), s3) == 0);
  CHECK(eigenspace_intersection_dim((-s3).eval(), -1, s3, +1) == 1);
  CHECK(eigenspace_intersection_dim((-s3).eval(), +1, s3, -1) == 1);
}

TEST_CASE("pair index equals the linear-path flow, exact integers") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 8;
    std::uniform_int_distribution<int> dims(0, 2);
    const int up = dims(rng), down = dims(rng);
    const auto [q0, q1] = planted_pair(rng, n, up, down);
    const int index = fredholm_pair_index(q0, q1);
    CHECK(index == up - down);
    CHECK(index == spectral_flow(linear_path(q0, q1, 21)).flow);
    CHECK(fredholm_pair_index(q1, q0) == -index);
  }
}

TEST_CASE("fredholm pair rejects non-unitaries") {
  CHECK_THROWS_AS(fredholm_pair_index(diag({2.0, -1.0}), diag({1.0, -1.0})),
                  std::invalid_argument);
}

TEST_CASE("homotopy square for the ssh flattening") {
  const Model m = make_ssh(0.4, 1.0);
  const auto s = chiral_block(m.build(LatticeBox(1, 8)));
  const Index ns = s.s.rows();
  Matrix fgrad = Matrix::Zero(ns, ns);
  for (Index i = 0; i < ns; ++i) {
    fgrad(i, i) = f_ell_value(Site{static_cast<int>(i) - 8, 0}, 8).real();
  }
  Matrix h00 = Matrix::Zero(2 * ns, 2 * ns);
  h00.topRightCorner(ns, ns) = s.s.adjoint();
  h00.bottomLeftCorner(ns, ns) = s.s;
  Matrix h10 = Matrix::Zero(2 * ns, 2 * ns);
  h10.topLeftCorner(ns, ns) = fgrad;
  h10.bottomRightCorner(ns, ns) = -fgrad;
  const auto [q0, q1] = flatten_endpoints(fgrad, s.s);

  const auto report = homotopy_grid_check(h00, h10, q0, q1, 21);
  CHECK(report.consistent);
  CHECK(report.bottom_flow == report.top_flow);
  CHECK(report.left_flow == 0);
  CHECK(report.right_flow == 0);
  // Over the full deformation both endpoint signatures vanish, so the flow
  // along either horizontal edge is zero at finite volume; the content of
  // the check is the equality of the two routes.
  CHECK(report.bottom_flow == 0);
}

TEST_CASE("homotopy square for commuting trivial corners") {
  Matrix a = diag({1.0, -2.0, 3.0});
  Matrix b = diag({2.0, 1.0, 1.0});
  Matrix h00 = Matrix::Zero(6, 6), h10 = Matrix::Zero(6, 6);
  h00.topRightCorner(3, 3) = b;
  h00.bottomLeftCorner(3, 3) = b;
  h10.topLeftCorner(3, 3) = a;
  h10.bottomRightCorner(3, 3) = -a;
  const auto [q0, q1] = flatten_endpoints(a, b);
  const auto report = homotopy_grid_check(h00, h10, q0, q1, 11);
  CHECK(report.consistent);
  CHECK(report.bottom_flow == 0);
  CHECK(report.top_flow == 0);
}

TEST_CASE("already-flat corners give a constant deformation") {
  std::mt19937_64 rng(39);
  const Matrix u = random_unitary(rng, 4);
  const Matrix a = diag({1.0, 1.0, -1.0, -1.0});
  Matrix h00 = Matrix::Zero(8, 8);
  h00.topRightCorner(4, 4) = u.adjoint();
  h00.bottomLeftCorner(4, 4) = u;
  Matrix h10 = Matrix::Zero(8, 8);
  h10.topLeftCorner(4, 4) = a;
  h10.bottomRightCorner(4, 4) = -a;
  const auto [q0, q1] = flatten_endpoints(a, u);
  CHECK((q0 - h00).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((q1 - h10).cwiseAbs().maxCoeff() < 1e-12);
  const auto report = homotopy_grid_check(h00, h10, q0, q1, 11);
  CHECK(report.consistent);
  CHECK(report.bottom_flow == report.top_flow);
}

TEST_CASE("trajectory export schema") {
  std::ostringstream out;
  write_eigenvalue_trajectories(linear_path(diag({-1.0, 2.0}), diag({1.0, 2.0}), 3), out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,eig_index,value");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 3 * 2);
}
