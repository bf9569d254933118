#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "specloc/inertia.hpp"
#include "specloc/types.hpp"

namespace specloc {

/// Discretized path of Hermitian matrices on [t0, tK] with invertible ends.
struct HermitianPath {
  std::function<Matrix(double)> at;
  std::vector<double> grid;  // strictly increasing
  double endpoint_tolerance = 0.0;  // 0 = relative default
};

/// Convenience: the linear segment (1-t) a + t b on a uniform grid.
HermitianPath linear_path(Matrix a, Matrix b, int points = 31);

struct Crossing {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int direction = 0;  // +1 eigenvalues moving up through zero, -1 down
  int multiplicity = 0;
};

struct FlowResult {
  int flow = 0;
  std::vector<Crossing> crossings;
  InertiaResult start;
  InertiaResult end;
};

/// Spectral flow of the path: half the signature difference of the endpoints,
/// cross-checked against the signed crossing count located by bisection.
/// Throws endpoint-singular / unresolved-crossing.
FlowResult spectral_flow(const HermitianPath& path);

/// Flattened endpoints (Q0, Q1) of the pair (A, B): Q0 the off-diagonal
/// doubling of pol(B), Q1 the diagonal grading by sgn(A).  Both are Hermitian
/// unitaries; sgn(A) = 2 P_[0,inf)(A) - 1.
std::pair<Matrix, Matrix> flatten_endpoints(const Matrix& a, const Matrix& b);

/// Index of the Fredholm pair of self-adjoint unitaries:
/// dim(E_-1(Q0) ^ E_1(Q1)) - dim(E_1(Q0) ^ E_-1(Q1)), intersections via
/// principal angles.  Equals the spectral flow of the linear path Q0 -> Q1.
int fredholm_pair_index(const Matrix& q0, const Matrix& q1);

/// Dimension of the intersection of the +-1 eigenspaces via principal angles
/// (cos of an accepted angle >= 1 - 1e-8).
int eigenspace_intersection_dim(const Matrix& q0, int sign0, const Matrix& q1, int sign1);

struct HomotopyReport {
  int bottom_flow = 0;  // s = 0 edge
  int top_flow = 0;     // s = 1 edge
  int left_flow = 0;    // t = 0 edge
  int right_flow = 0;   // t = 1 edge, traversed downward in s
  bool consistent = false;
};

/// Checks that the flow along the bottom edge of the bilinear family
///   H(t, s) = (1-s) [(1-t) h00 + t h10] + s [(1-t) h01 + t h11]
/// equals the flow along left + top + right, and that the side edges carry
/// zero flow.  Throws edge-singular when a side edge fails invertibility.
HomotopyReport homotopy_grid_check(const Matrix& h00, const Matrix& h10, const Matrix& h01,
                                   const Matrix& h11, int grid_points = 21);

/// Sorted eigenvalues along the path; rows t, eig_index, value.
void write_eigenvalue_trajectories(const HermitianPath& path, std::ostream& out);

}  // namespace specloc
