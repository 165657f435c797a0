#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace mcpde {

// Worker count, MCPDE_THREADS env var, default 1. Work is partitioned by
// index range and every result lands in its own slot, so the thread count
// never changes the numbers.
inline int thread_count() {
  static const int n = [] {
    if (const char* env = std::getenv("MCPDE_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 1;
  }();
  return n;
}

template <typename Fn>
void parallel_ranges(long total, Fn&& fn) {
  const int threads = thread_count();
  if (threads <= 1 || total < 2 * threads) {
    fn(0L, total);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace mcpde
