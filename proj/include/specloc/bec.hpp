#pragma once

#include <vector>

#include "specloc/invariants.hpp"
#include "specloc/models.hpp"
#include "specloc/operators.hpp"

namespace specloc {

/// Flat interface operator at fixed kappa built from a unitary chiral block:
///   Sigma_kappa = (kappa^2 + 1)^(-1/2) [[sign kappa, U*], [U, -sign kappa]].
/// Hermitian and squares to the identity.  Throws not-unitary.
LocalOperator flattened_sigma(const ChiralBlock& u, double kappa, int sign);

/// Windowed trace of Sigma [[Lambda, Sigma], d_kappa Sigma] with the -1/8
/// normalization, sampled on a symmetric kappa grid.
struct KuboIntegrand {
  std::vector<double> kappa;
  std::vector<double> value;
  int margin = 0;
};

KuboIntegrand kubo_integrand(const ChiralBlock& u, double kappa_max, int nodes, int margin,
                             int sign);

/// Brute-force evaluation of the integrand at one kappa from the assembled
/// block matrices; validates the closed form used by kubo_integrand.
double kubo_integrand_direct(const ChiralBlock& u, double kappa, int margin, int sign);

/// Composite-trapezoid quadrature of the integrand over [-kappa_max, kappa_max].
/// Doubling the node count must move the result by less than 1e-4
/// (quadrature-unconverged otherwise).  Rounds to the interface index.
InvariantValue kubo_chern(const ChiralBlock& u, double kappa_max, int nodes, int margin, int sign);

/// The same trapezoid applied to the analytic profile 2 (1 + kappa^2)^(-3/2);
/// the full-line integral is exactly 4.
double profile_quadrature(double kappa_max, int nodes);

/// Spectral flow of kappa -> [[0, S*], [S, 0]] + kappa sgn(X) sigma_3 over
/// the full line versus the half line; the full flow must equal twice the
/// half flow by the sign-conjugation symmetry.
struct HalflineReport {
  int full_flow = 0;
  int half_flow = 0;
  bool symmetric = false;
};

HalflineReport halfline_flow_symmetry(const Model& model, int ell, double kappa_max);

}  // namespace specloc
