#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lohe {

/// Worker cap: LOHE_THREADS when set, otherwise hardware concurrency.
inline unsigned thread_cap() {
  if (const char* env = std::getenv("LOHE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, n). `work_per_item` is a rough flop estimate used
/// to skip thread spawning when the batch is too small to amortize it. Work
/// items write disjoint slots, so the result is bitwise independent of the
/// worker count.
template <class Fn>
void parallel_for(std::size_t n, std::size_t work_per_item, Fn&& fn) {
  constexpr std::size_t kSpawnThreshold = 1u << 16;
  const unsigned cap = thread_cap();
  if (cap <= 1 || n < 2 || n * work_per_item < kSpawnThreshold) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lohe
