#include "specloc/flow.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "specloc/dense.hpp"
#include "specloc/operators.hpp"

namespace specloc {

namespace {

constexpr double kBisectionFloor = 1e-12;
constexpr double kCrossingWidth = 1e-6;

double path_tolerance(const HermitianPath& path, const Matrix& sample) {
  if (path.endpoint_tolerance > 0.0) return path.endpoint_tolerance;
  return 1e-10 * std::max(1.0, max_abs(sample));
}

/// Inertia at t; when the sample sits on a crossing (n_zero > 0) the point is
/// nudged inside the surrounding interval until the count is unambiguous.
InertiaResult sampled_inertia(const HermitianPath& path, double t, double lo, double hi,
                              double tol) {
  InertiaResult r = inertia(path.at(t), tol);
  double shift = 0.37 * std::min(t - lo, hi - t);
  int attempts = 0;
  while (r.n_zero > 0 && attempts < 6 && shift > 0.0) {
    r = inertia(path.at(t + shift), tol);
    shift *= 0.5;
    ++attempts;
  }
  if (r.n_zero > 0) {
    throw std::runtime_error("unresolved-crossing: inertia stays ambiguous near t = " +
                             std::to_string(t));
  }
  return r;
}

void refine_crossing(const HermitianPath& path, double lo, double hi, int sig_lo, int sig_hi,
                     double tol, std::vector<Crossing>& out) {
  while (hi - lo > kCrossingWidth) {
    if (hi - lo < kBisectionFloor) break;
    const double mid = 0.5 * (lo + hi);
    InertiaResult m;
    try {
      m = sampled_inertia(path, mid, lo, hi, tol);
    } catch (const std::runtime_error&) {
      break;  // keep the unrefined interval
    }
    if (m.signature() != sig_lo) {
      // keep the left part, recurse right only if it also changes
      if (m.signature() != sig_hi) {
        refine_crossing(path, lo, mid, sig_lo, m.signature(), tol, out);
        refine_crossing(path, mid, hi, m.signature(), sig_hi, tol, out);
        return;
      }
      hi = mid;
      sig_hi = m.signature();
    } else {
      lo = mid;
    }
  }
  const int delta = sig_hi - sig_lo;
  out.push_back(Crossing{lo, hi, delta > 0 ? 1 : -1, std::abs(delta) / 2});
}

}  // namespace

HermitianPath linear_path(Matrix a, Matrix b, int points) {
  HermitianPath p;
  p.at = [a = std::move(a), b = std::move(b)](double t) { return ((1.0 - t) * a + t * b).eval(); };
  p.grid.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    p.grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  }
  return p;
}

FlowResult spectral_flow(const HermitianPath& path) {
  if (path.grid.size() < 2) throw std::invalid_argument("path grid needs at least two points");
  const Matrix first = path.at(path.grid.front());
  const double tol = path_tolerance(path, first);

  FlowResult result;
  result.start = inertia(first, tol);
  result.end = inertia(path.at(path.grid.back()), tol);
  if (result.start.n_zero > 0 || result.end.n_zero > 0) {
    throw std::invalid_argument("endpoint-singular: path endpoints must be invertible");
  }
  result.flow = (result.end.signature() - result.start.signature()) / 2;

  // Locate the crossings grid interval by interval.
  int prev_sig = result.start.signature();
  double prev_t = path.grid.front();
  for (std::size_t i = 1; i < path.grid.size(); ++i) {
    const double t = path.grid[i];
    const InertiaResult r =
        (i + 1 == path.grid.size())
            ? result.end
            : sampled_inertia(path, t, prev_t, path.grid[std::min(i + 1, path.grid.size() - 1)],
                              tol);
    if (r.signature() != prev_sig) {
      refine_crossing(path, prev_t, t, prev_sig, r.signature(), tol, result.crossings);
    }
    prev_sig = r.signature();
    prev_t = t;
  }

  int counted = 0;
  for (const Crossing& c : result.crossings) counted += c.direction * c.multiplicity;
  if (counted != result.flow) {
    throw std::runtime_error("unresolved-crossing: crossing count " + std::to_string(counted) +
                             " disagrees with the signature difference " +
                             std::to_string(result.flow));
  }
  return result;
}

std::pair<Matrix, Matrix> flatten_endpoints(const Matrix& a, const Matrix& b) {
  if (hermiticity_defect(a) > 1e-12) {
    throw std::invalid_argument("flatten_endpoints: A must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.eigenvalues().cwiseAbs().minCoeff() <= 1e-12 * es.eigenvalues().cwiseAbs().maxCoeff()) {
    throw std::invalid_argument("singular-input: A must be invertible");
  }
  // sgn(A) = 2 * P_[0,inf) - 1; the polar part of a Hermitian invertible matrix.
  Matrix signs = Matrix::Zero(a.rows(), a.cols());
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    signs(i, i) = es.eigenvalues()(i) >= 0.0 ? 1.0 : -1.0;
  }
  const Matrix a_flat = es.eigenvectors() * signs * es.eigenvectors().adjoint();
  const Matrix b_flat = polar_part(b);

  const Index n = a.rows();
  Matrix q0 = Matrix::Zero(2 * n, 2 * n);
  q0.topRightCorner(n, n) = b_flat.adjoint();
  q0.bottomLeftCorner(n, n) = b_flat;
  Matrix q1 = Matrix::Zero(2 * n, 2 * n);
  q1.topLeftCorner(n, n) = a_flat;
  q1.bottomRightCorner(n, n) = -a_flat;
  return {std::move(q0), std::move(q1)};
}

int eigenspace_intersection_dim(const Matrix& q0, int sign0, const Matrix& q1, int sign1) {
  const auto eigenspace = [](const Matrix& q, int sign) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(q);
    Index count = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
      if ((sign > 0 && es.eigenvalues()(i) > 0.0) || (sign < 0 && es.eigenvalues()(i) < 0.0)) {
        ++count;
      }
    }
    Matrix basis(q.rows(), count);
    Index k = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
      if ((sign > 0 && es.eigenvalues()(i) > 0.0) || (sign < 0 && es.eigenvalues()(i) < 0.0)) {
        basis.col(k++) = es.eigenvectors().col(i);
      }
    }
    return basis;
  };
  const Matrix u = eigenspace(q0, sign0);
  const Matrix v = eigenspace(q1, sign1);
  if (u.cols() == 0 || v.cols() == 0) return 0;
  const auto cosines = singular_values(u.adjoint() * v);
  int dim = 0;
  for (Index i = 0; i < cosines.size(); ++i) {
    if (cosines(i) >= 1.0 - 1e-8) ++dim;
  }
  return dim;
}

int fredholm_pair_index(const Matrix& q0, const Matrix& q1) {
  if (max_abs(q0 * q0 - Matrix::Identity(q0.rows(), q0.cols())) > 1e-10 ||
      max_abs(q1 * q1 - Matrix::Identity(q1.rows(), q1.cols())) > 1e-10) {
    throw std::invalid_argument("fredholm_pair_index: inputs must be self-adjoint unitaries");
  }
  const auto sv = singular_values(q0 + q1);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= 1e-10 && sv(i) < 1e-8) {
      throw std::invalid_argument(
          "ill-conditioned-kernel: singular value of Q0 + Q1 inside the ambiguity band");
    }
  }
  return eigenspace_intersection_dim(q0, -1, q1, +1) - eigenspace_intersection_dim(q0, +1, q1, -1);
}

HomotopyReport homotopy_grid_check(const Matrix& h00, const Matrix& h10, const Matrix& h01,
                                   const Matrix& h11, int grid_points) {
  const auto family = [&](double t, double s) {
    return ((1.0 - s) * ((1.0 - t) * h00 + t * h10) + s * ((1.0 - t) * h01 + t * h11)).eval();
  };
  const auto edge = [&](const std::function<Matrix(double)>& at) {
    HermitianPath p;
    p.at = at;
    p.grid.resize(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
      p.grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (grid_points - 1);
    }
    return spectral_flow(p);
  };

  // Side edges must stay invertible along s for the deformation to be valid.
  const double tol = 1e-10 * std::max(1.0, max_abs(h00));
  for (int i = 0; i < grid_points; ++i) {
    const double s = static_cast<double>(i) / (grid_points - 1);
    if (hermitian_gap(family(0.0, s)) <= tol || hermitian_gap(family(1.0, s)) <= tol) {
      throw std::runtime_error("edge-singular: a side edge of the homotopy square is singular");
    }
  }

  HomotopyReport report;
  report.bottom_flow = edge([&](double t) { return family(t, 0.0); }).flow;
  report.top_flow = edge([&](double t) { return family(t, 1.0); }).flow;
  report.left_flow = edge([&](double s) { return family(0.0, s); }).flow;
  report.right_flow = edge([&](double s) { return family(1.0, 1.0 - s); }).flow;
  report.consistent = report.bottom_flow == report.left_flow + report.top_flow + report.right_flow &&
                      report.left_flow == 0 && report.right_flow == 0;
  return report;
}

void write_eigenvalue_trajectories(const HermitianPath& path, std::ostream& out) {
  out << "t,eig_index,value\n";
  char buf[64];
  for (double t : path.grid) {
    const auto eigs = hermitian_eigenvalues(path.at(t));
    for (Index i = 0; i < eigs.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g,%lld,%.12g", t, static_cast<long long>(i), eigs(i));
      out << buf << "\n";
    }
  }
}

}  // namespace specloc
