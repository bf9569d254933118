#pragma once

#include <vector>

#include "specloc/operators.hpp"
#include "specloc/types.hpp"

namespace specloc {

/// Eigenvalue counts of a Hermitian matrix relative to a zero tolerance.
struct InertiaResult {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;
  double min_abs_eig = 0.0;
  double zero_tolerance = 0.0;
  /// Zero count is empty and the smallest eigenvalue clears the tolerance by
  /// two orders of magnitude; anything less is reported, not rounded.
  bool certified = false;

  int signature() const { return n_plus - n_minus; }
  Index dim() const { return n_plus + n_minus + n_zero; }
};

/// Full-eigendecomposition inertia.  Throws not-hermitian when the input
/// deviates from M = M^* beyond 1e-12 relative.
InertiaResult inertia(const Matrix& m, double zero_tolerance);

/// As above with zero_tolerance = 1e-10 * |M|.
InertiaResult inertia(const Matrix& m);

/// Inertia over the eigenvectors carrying at least `weight` of their mass on
/// the marked components.  Used to discard modes localized at an artificial
/// Dirichlet boundary when a finite box stands in for infinite volume.
InertiaResult masked_inertia(const Matrix& m, const std::vector<bool>& mask, double weight,
                             double zero_tolerance);

/// gap(M) = smallest singular value; 0 for a singular or empty matrix.
double gap(const Matrix& m);

/// dist(0, spec(M)) for Hermitian M; equals gap(M) but avoids the SVD.
double hermitian_gap(const Matrix& m);

}  // namespace specloc
