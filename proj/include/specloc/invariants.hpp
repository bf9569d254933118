#pragma once

#include <functional>
#include <string>

#include "specloc/operators.hpp"

namespace specloc {

enum class InvariantMethod {
  kKSpaceWinding,
  kKSpaceChern,
  kRealSpaceWinding,
  kChernMarker,
  kKuboChern,
};

std::string method_name(InvariantMethod m);

/// Integer invariant plus the raw value it was rounded from.
struct InvariantValue {
  int value = 0;
  InvariantMethod method = InvariantMethod::kKSpaceWinding;
  double pre_rounding = 0.0;
  double residual = 0.0;  // |pre_rounding - value|
};

/// Winding number of det S(k) from phase-unwrapped differences over a closed
/// k-grid.  Throws gap-closed-on-grid when S(k) comes within 1e-8 of singular.
InvariantValue kspace_winding(const std::function<Matrix(double)>& symbol, int nk = 2048);

/// Chern number of the bands of h(k) below zero, via plaquette Berry phases
/// of the occupied frame on an nk x nk grid (integer by construction).
InvariantValue kspace_chern(const std::function<Matrix(double, double)>& symbol, int nk = 64);

/// Real-space winding from the flattened chiral block: the half-space trace
/// formula for U = pol(S), evaluated over the middle window of the box
/// (sites with max-norm <= radius - margin).
InvariantValue realspace_winding(const ChiralBlock& s, int margin);

/// Real-space Chern number 2 pi i tr_window([P L1 P, P L2 P]) with P the
/// Fermi projection of H below zero and L_j the half-space projections.
InvariantValue chern_marker(const LocalOperator& h, int margin);

}  // namespace specloc
