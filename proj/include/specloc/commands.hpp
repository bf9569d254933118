#pragma once

#include "specloc/config.hpp"

namespace specloc {

/// Exit codes shared by all commands:
///   0  success / all checks matched
///   1  a verification check did not match
///   2  usage, config or precondition error, or an uncertified inertia
int cmd_sig(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_phase(const RunConfig& config);
int cmd_verify_bounds(const RunConfig& config);
int cmd_oracle(const RunConfig& config);
int cmd_dump(const RunConfig& config);

}  // namespace specloc
