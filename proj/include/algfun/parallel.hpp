#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace algfun {

inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : (int)hw;
}

// index-parallel loop; results must be written to per-index slots so the
// output does not depend on scheduling
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::min(effective_threads(threads), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        while (true) {
          int i = next.fetch_add(1);
          if (i >= n) break;
          fn(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace algfun
