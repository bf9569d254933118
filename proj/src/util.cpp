#include "specloc/util.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace specloc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double keyed_uniform(std::uint64_t seed, std::int64_t key1, std::int64_t key2) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(key1) * 0x9e3779b97f4a7c15ull);
  h = splitmix64(h ^ static_cast<std::uint64_t>(key2) * 0xc2b2ae3d27d4eb4full);
  // 53 mantissa bits -> [0, 1), then stretch to [-1, 1].
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace specloc
