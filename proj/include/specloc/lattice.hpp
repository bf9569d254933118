#pragma once

#include <vector>

#include "specloc/types.hpp"

namespace specloc {

class LocalOperator;

/// Lattice point; y stays 0 in one dimension.
struct Site {
  int x = 0;
  int y = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

/// Square box of radius ell around the origin: all x with max-norm <= ell.
/// Sites are ordered lexicographically by (y, x); the ordering is part of the
/// contract (dense indices must be identical across runs).
class LatticeBox {
 public:
  LatticeBox(int dim, int radius);

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  Index num_sites() const { return static_cast<Index>(sites_.size()); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(Index i) const { return sites_[static_cast<std::size_t>(i)]; }

  bool contains(const Site& s) const;
  /// Dense index of a site; throws if the site is outside the box.
  Index index_of(const Site& s) const;

  friend bool operator==(const LatticeBox& a, const LatticeBox& b) {
    return a.dim_ == b.dim_ && a.radius_ == b.radius_;
  }

 private:
  int dim_;
  int radius_;
  std::vector<Site> sites_;
};

LatticeBox enumerate_box(int dim, int radius);

enum class PositionKind {
  kRawAmended,     // x itself, origin sent to 1
  kClampedRadial,  // radial clamp onto the disc of radius ell, origin sent to 1
  kSign,           // sgn(x) with sgn(0) = +1 (one dimension)
  kLaughlinPhase,  // exp(i arg(x + iy)), origin sent to 1 (two dimensions)
  kClampedSquare,  // identity inside the square box, phase clamp outside (two dimensions)
};

struct PositionFunction {
  PositionKind kind;
  int dim;
  int ell;
};

/// Radially clamped position value: 1 at the origin, x for 1 <= |x| < ell,
/// ell * x/|x| for |x| >= ell.  A site in one dimension is read as a real
/// number, in two dimensions as x + iy.  Modulus of the result lies in [1, ell].
Complex f_ell_value(const Site& s, int ell);

/// Sign with sgn(0) = +1.
int sign_value(int x);

Complex position_value(const Site& s, const PositionFunction& fun);

/// Diagonal multiplication operator: each site block is scalar * identity.
LocalOperator build_position_operator(const LatticeBox& box, const PositionFunction& fun,
                                      int internal_dim);

/// Projection onto sites whose coordinate along `axis` (1 or 2) is >= 0.
LocalOperator half_space_projection(const LatticeBox& box, int axis, int internal_dim);

}  // namespace specloc
