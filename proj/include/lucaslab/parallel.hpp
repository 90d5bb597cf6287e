#pragma once

/**
 * Minimal fan-out helper for batch checks. Work is split into contiguous
 * chunks; callers write results into pre-sized slots indexed by n, so the
 * assembled report is deterministic regardless of scheduling.
 */

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace lucaslab {

/// Default worker count: LUCASLAB_THREADS when set, otherwise 1.
inline int default_thread_count() {
  if (const char* env = std::getenv("LUCASLAB_THREADS")) {
    int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  return 1;
}

/// Runs fn(n) for n in [lo, hi] across `threads` workers. fn must be
/// thread-safe and write only to its own slot.
template <typename Fn>
void parallel_for(long lo, long hi, int threads, Fn&& fn) {
  if (hi < lo) return;
  const long count = hi - lo + 1;
  threads = static_cast<int>(std::max<long>(1, std::min<long>(threads, count)));
  if (threads == 1) {
    for (long n = lo; n <= hi; ++n) fn(n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const long chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long begin = lo + t * chunk;
    const long end = std::min(hi, begin + chunk - 1);
    if (begin > hi) break;
    workers.emplace_back([begin, end, &fn] {
      for (long n = begin; n <= end; ++n) fn(n);
    });
  }
  for (std::thread& w : workers) w.join();
}

}  // namespace lucaslab
