// ── urnlab/parallel.hpp ─────────────────────────────────────────────────────
//
// Minimal deterministic work partitioning.  parallel_for splits [0, n) into
// contiguous ranges, one per worker; results must be written to caller-owned
// per-index slots so the outcome is independent of scheduling.
//
#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "urnlab/errors.hpp"

namespace urnlab {

inline int default_threads() {
  if (const char* env = std::getenv("URNLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& body) {
  require(threads >= 1, errc::invalid_argument, "thread count must be >= 1");
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(std::size_t(threads), n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        for (std::size_t i = b; i < e; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace urnlab
