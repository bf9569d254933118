#pragma once

#include <cstdint>
#include <vector>

#include "specloc/lattice.hpp"
#include "specloc/types.hpp"

namespace specloc {

/// Dense block operator on box x C^N.  Dense index = site_index * N + internal.
/// The hermitian/chiral flags are checked against the entries at construction.
class LocalOperator {
 public:
  LocalOperator(LatticeBox box, int internal_dim, Matrix entries, bool hermitian = false,
                bool chiral = false);

  /// Diagonal operator with per-site blocks value * identity.  The hermitian
  /// flag is derived from the values.
  static LocalOperator Diagonal(const LatticeBox& box, int internal_dim,
                                const std::vector<Complex>& site_values);

  const LatticeBox& box() const { return box_; }
  int internal_dim() const { return internal_dim_; }
  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  bool hermitian() const { return hermitian_; }
  bool chiral() const { return chiral_; }

  Index dense_index(Index site, int internal) const {
    return site * internal_dim_ + internal;
  }
  Index site_of(Index dense) const { return dense / internal_dim_; }

  /// N x N block coupling sites i (row) and j (column).
  Matrix block(Index site_i, Index site_j) const {
    return entries_.block(site_i * internal_dim_, site_j * internal_dim_, internal_dim_,
                          internal_dim_);
  }

 private:
  LatticeBox box_;
  int internal_dim_;
  Matrix entries_;
  bool hermitian_;
  bool chiral_;
};

/// Off-diagonal block S of a chiral operator H = [[0, S*], [S, 0]] in the
/// grading by internal index (first N/2 components = plus half).
struct ChiralBlock {
  LatticeBox box;
  int internal_half;  // N/2
  Matrix s;           // maps the plus half to the minus half
};

ChiralBlock chiral_block(const LocalOperator& h);
LocalOperator assemble_chiral(const ChiralBlock& b);

/// Exponential decay budget |H_{x,y}| <= amplitude * exp(-decay * |x-y|).
struct LocalityBudget {
  double amplitude = 0.0;  // C
  double decay = 0.0;      // mu
  /// D = C / (cosh(mu) - 1), the constant entering the admissible-kappa bound.
  double derived() const;
};

/// Smallest amplitude C making the exponential envelope valid for op at the
/// given decay rate (Euclidean distance, per-block operator norm).
LocalityBudget estimate_locality(const LocalOperator& op, double decay);

/// Dirichlet split of op along an inner sub-box: inner compression, the
/// complement block, and the coupling between them.
struct Compression {
  LocalOperator inner;
  Matrix outer;
  Matrix coupling;  // rows: inner indices, cols: outer indices
  std::vector<Index> inner_dense;
  std::vector<Index> outer_dense;
  Index parent_dim = 0;
};

Compression compress(const LocalOperator& op, const LatticeBox& inner);

/// Rebuilds the parent matrix with the coupling block scaled by s.  At s = 1
/// this reproduces the original entries exactly; at s = 0 it is the direct sum.
Matrix reassemble(const Compression& c, double coupling_scale);

/// Unitary factor U of the polar decomposition M = U * sqrt(M^* M).
/// Requires the smallest singular value to exceed rel_tolerance * |M|;
/// the default matches an invertibility check at working precision.  Chiral
/// blocks of topological chains on a box carry an exponentially small
/// singular value from the cut, so their flattening passes rel_tolerance = 0
/// (reject only an exact kernel): the ambiguous directions are localized at
/// the boundary and dropped by every windowed trace downstream.
Matrix polar_part(const Matrix& m, double rel_tolerance);
Matrix polar_part(const Matrix& m);

/// Flattened chiral block U = pol(S) over the same box.
ChiralBlock flatten_block(const ChiralBlock& s);

/// SSH chain on the box: cells at the box sites, intra-cell hop v, inter-cell
/// hop w, multiplicative hopping disorder drawn uniformly from
/// [-disorder, disorder].  Noise is keyed by (seed, bond position), so the
/// operator restricted to a sub-box equals the operator built on the sub-box.
LocalOperator build_ssh(const LatticeBox& box, double v, double w, double disorder,
                        std::uint64_t seed);

/// Two-band Chern model with Bloch symbol
///   h(k) = sin k1 s1 + sin k2 s2 + (m - cos k1 - cos k2) s3.
LocalOperator build_qwz(const LatticeBox& box, double m);

}  // namespace specloc
