#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace genact {

// Worker cap from GENACT_THREADS; default 1 (reference deterministic mode).
inline int worker_threads() {
  const char* env = std::getenv("GENACT_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

// Runs fn(i) for i in [0, n). With t workers each item is computed on some
// worker, but items are independent and results are written by index, so the
// outcome is identical to the serial order.
inline void parallel_for(int n, const std::function<void(int)>& fn, int threads = -1) {
  if (threads < 0) threads = worker_threads();
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace genact
