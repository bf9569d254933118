#pragma once

#include <vector>

#include "specloc/inertia.hpp"
#include "specloc/models.hpp"
#include "specloc/operators.hpp"

namespace specloc {

/// Everything needed to assemble the finite-volume localizer and its
/// large-box stand-in for the infinite-volume operator.
struct LocalizerSpec {
  Model model;
  int ell = 1;
  int outer_ell = 2;  // radius of the stand-in box, >= 2 * ell
  double kappa = 0.0;
  LocalityBudget budget;

  void validate() const;
};

/// Finite-volume localizer on the box of radius ell.
///
/// d = 1 (chiral H):  (1-k) [[0, S*], [S, 0]] + k [[X, 0], [0, -X]]
/// d = 2:             (1-k) [[H, 0], [0, -H]] + k [[0, X*], [X, 0]]
///
/// with X the origin-amended position.  In one dimension the grading is the
/// chiral one and the matrix lives on the same space as H; in two dimensions
/// the space is doubled (internal index = grading * N + orbital).
LocalOperator build_localizer(const LocalOperator& h, double kappa);
LocalOperator build_localizer(const Model& model, int ell, double kappa);
LocalOperator build_localizer(const LocalizerSpec& spec);

/// Dirichlet restriction, to the box of radius outer_ell, of the
/// infinite-volume localizer built with the clipped position profile f_ell.
/// Its inner ell-block reproduces build_localizer exactly.  In two dimensions
/// the square-clamped profile is used: it is the variant that agrees with the
/// amended position on the whole inner box.
LocalOperator build_infinite_surrogate(const Model& model, int ell, int outer_ell, double kappa);
LocalOperator build_infinite_surrogate(const LocalizerSpec& spec);

/// Grading operator (+1 on the first half of the internal components, -1 on
/// the second) used by the chiral-symmetry checks.
Matrix grading_matrix(const LatticeBox& box, int internal_dim);

/// Admissible-parameter constants of the signature theorem, from probe-box
/// estimates of the gap and norm of H.
struct TheoremConstants {
  double gap_h = 0.0;   // probe-box estimate of dist(0, spec H)
  double norm_h = 0.0;  // probe-box estimate of |H|
  double locality_d = 0.0;  // D = C / (cosh mu - 1)
  int dim = 1;

  double kappa_star() const;
  double ell_min() const;
};

/// Measures gap(H) and |H| on a probe box.  Boundary-localized modes (edge
/// states of a Dirichlet cut, absent in infinite volume) are excluded from
/// the gap estimate by an interior-weight filter.  Throws gapless-model when
/// the filtered gap cannot be certified.
TheoremConstants theorem_constants(const Model& model, const LocalityBudget& budget,
                                   int probe_ell);

/// Lower bound sqrt((1-k)^2 gap^2 - k (1-k) D^d) on the infinite-volume
/// localizer gap.  Throws kappa-too-large when the radicand is negative.
double gap_lower_bound(double kappa, const LocalityBudget& budget, double gap_h, int dim);

/// Dense-index mask marking components on sites with max-norm <= radius.
std::vector<bool> interior_mask(const LatticeBox& box, int internal_dim, int interior_radius);

/// Smallest |eigenvalue| over eigenvectors carrying at least
/// `interior_weight` of their mass on sites with max-norm <= interior_radius.
/// Stand-in for the spectrum of the infinite-volume operator near zero: it
/// discards modes localized at the artificial outer boundary.
double interior_gap(const LocalOperator& op, int interior_radius, double interior_weight = 0.5);

/// Signature over the same interior-filtered eigenvectors.
InertiaResult interior_inertia(const LocalOperator& op, int interior_radius,
                               double interior_weight = 0.5);

}  // namespace specloc
