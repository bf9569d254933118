#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specloc/operators.hpp"

namespace specloc {

/// One verified inequality, oriented as lhs <= rhs.
struct BoundReport {
  std::string lemma;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;

  double margin() const { return rhs - lhs; }
};

bool report_passes(double lhs, double rhs);

/// Commutator-with-position bound: interior-restricted |[A, X_j]| against
/// C coth(mu/(2 sqrt d))^(d-1) / (cosh(mu/sqrt d) - 1).  The interior
/// restriction (depth 5/mu) emulates the infinite-volume norm.
/// Throws budget-violated when the budget envelope does not hold for A.
BoundReport check_holmgren_commutator(const LocalOperator& a, const LocalityBudget& budget,
                                      int axis);

/// One-dimensional clipped-position commutator bounds: the operator-norm
/// bound |[A, f_ell(X)]| <= C / (cosh mu - 1) (uniform in ell) and the
/// trace-norm bound against ell |[A, sgn X]|_1 + 2 N |A| ell (2 ell + 1) + 4 N |A|.
std::vector<BoundReport> check_fl_commutator(const LocalOperator& a, const LocalityBudget& budget,
                                             int ell);

/// Two-dimensional analogue with the square-clamped profile: operator norm
/// against (C / (cosh mu - 1))^2 and the Schatten-3 bound against
/// ell |[A, L]|_3 + 2 N |A| ell (2 ell + 1)^2 + 4 N |A|.
std::vector<BoundReport> check_fl_commutator_2d(const LocalOperator& a,
                                                const LocalityBudget& budget, int ell);

/// Randomized verification of the gap lemmas (products, sums, direct sums,
/// block operators, the cut interpolation, the traceless block bound).
/// Includes one deterministic instance attaining gap(A+B) = gap(A) - |B|.
std::vector<BoundReport> check_gap_lemmas(int dim_budget, int draws, std::uint64_t seed);

/// Random operator on the box with complex-Gaussian blocks under an
/// exponential envelope; rescaled so that the measured locality amplitude is
/// `target_amplitude`.  Hermitized on request.
LocalOperator random_local_operator(const LatticeBox& box, int internal_dim, double decay,
                                    std::uint64_t seed, bool hermitian,
                                    double target_amplitude = 2.0);

}  // namespace specloc
