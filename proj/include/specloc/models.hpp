#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "specloc/operators.hpp"

namespace specloc {

/// A lattice model: a builder producing the Hamiltonian on any box, plus
/// Bloch-symbol accessors for the translation-invariant case.
struct Model {
  std::string name;
  int dim = 1;
  int internal_dim = 2;  // N
  bool chiral = false;
  bool translation_invariant = true;

  std::function<LocalOperator(const LatticeBox&)> build;

  /// d = 1 chiral models: symbol of the chiral block, (N/2) x (N/2).
  std::function<Matrix(double)> chiral_symbol;
  /// d = 2 models: Bloch Hamiltonian h(k1, k2), N x N.
  std::function<Matrix(double, double)> bloch_symbol;

  LocalOperator on_box(int ell) const { return build(LatticeBox(dim, ell)); }
};

Model make_ssh(double v, double w, double disorder = 0.0, std::uint64_t seed = 0);
Model make_qwz(double mass);

/// Bulk spectral gap dist(0, spec h(k)) from a dense scan of the Bloch symbol.
double bulk_gap_scan(const Model& model, int nk = 4096);

/// Bulk operator norm max_k |h(k)| from a dense scan.
double bulk_norm_scan(const Model& model, int nk = 1024);

}  // namespace specloc
