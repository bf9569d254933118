#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace specloc {

/// SplitMix64 step; used to derive independent per-item noise streams.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic uniform value in [-1, 1] keyed by (seed, key1, key2).
double keyed_uniform(std::uint64_t seed, std::int64_t key1, std::int64_t key2);

/// Runs fn(0..n-1) on up to `workers` threads.  Each index is evaluated
/// exactly once; callers own any ordering of the collected results, so the
/// outcome does not depend on the worker count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace specloc
