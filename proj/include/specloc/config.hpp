#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "specloc/models.hpp"

namespace specloc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat sectioned key-value run description.  Unknown keys are hard errors.
struct RunConfig {
  // [model]
  std::string model_name;  // "ssh" or "qwz"
  double v = 1.0;
  double w = 0.0;
  double disorder = 0.0;
  double mass = 0.0;

  // [localizer]
  int ell = 12;
  int outer_ell = 0;  // 0 = 2 * ell
  int probe_ell = 0;  // 0 = per-dimension default
  double kappa = 0.1;
  int kappa_points = 61;
  double mu = 1.0;

  // [inertia]
  double zero_tolerance = 0.0;  // 0 = relative default

  // [invariants]
  int nk_winding = 2048;
  int nk_chern = 64;
  int margin = 0;  // 0 = ell / 4

  // [phase]
  std::string phase_param;  // "m", "v" or "w"
  double phase_from = 0.0;
  double phase_to = 0.0;
  int phase_points = 0;

  // [verify]
  int verify_draws = 100;
  int verify_dim = 24;
  std::uint64_t verify_seed = 1;
  double verify_budget_c = 0.0;  // 0 = use the measured amplitude

  // [run]
  std::vector<std::uint64_t> seeds = {1};
  std::string out_dir;
  int workers = 1;
  bool trajectories = false;

  static RunConfig load(const std::string& path);
  static RunConfig from_stream(std::istream& in);

  /// Rejects out-of-range values with field-level messages.
  void validate() const;

  Model make_model(std::uint64_t seed) const;
  int effective_outer_ell() const { return outer_ell > 0 ? outer_ell : 2 * ell; }
  int effective_probe_ell() const;
  int effective_margin() const { return margin > 0 ? margin : std::max(1, ell / 4); }
};

}  // namespace specloc
