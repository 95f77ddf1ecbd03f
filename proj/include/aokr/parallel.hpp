#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace aokr {

// Default worker count: AOKR_WORKERS environment variable if set and
// positive, otherwise the hardware concurrency (at least 1).
inline unsigned default_workers() {
  if (const char* env = std::getenv("AOKR_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1u;
}

// Statically partitions [0, n) into contiguous chunks, one per worker, and
// runs chunk_fn(begin, end) on each. Each index is processed by exactly one
// worker; callers write results to per-index slots, so the outcome is
// independent of the worker count. The first exception thrown by any chunk
// is rethrown on the calling thread.
inline void parallel_for_chunks(std::size_t n, unsigned workers,
                                const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
  if (n == 0) return;
  if (workers == 0) workers = default_workers();
  const std::size_t w = std::min<std::size_t>(workers, n);
  if (w <= 1) {
    chunk_fn(0, n);
    return;
  }
  const std::size_t chunk = (n + w - 1) / w;
  std::vector<std::thread> threads;
  threads.reserve(w - 1);
  std::vector<std::exception_ptr> errors(w);
  auto run = [&](std::size_t widx) {
    const std::size_t begin = widx * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) return;
    try {
      chunk_fn(begin, end);
    } catch (...) {
      errors[widx] = std::current_exception();
    }
  };
  for (std::size_t widx = 1; widx < w; ++widx) {
    threads.emplace_back(run, widx);
  }
  run(0);
  for (auto& t : threads) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace aokr
