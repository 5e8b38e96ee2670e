#pragma once

// Minimal fork-join helper for the exhaustive scans.  The worker count
// follows QSEP_THREADS when set (floored at 1), otherwise the hardware
// concurrency.  Work is handed out in chunks through a shared atomic
// cursor; the first exception thrown by any worker is rethrown after join.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qsep {

inline unsigned worker_count() {
  if (const char* env = std::getenv("QSEP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 1024) return unsigned(v);
    return 1;  // unparsable or out of range: stay safe and serial
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Calls fn(i) for every i in [begin, end); order across workers is
// unspecified, so fn must only touch disjoint or idempotent state.
template <typename Fn>
void parallel_for(uint64_t begin, uint64_t end, Fn&& fn,
                  uint64_t chunk = 256) {
  if (begin >= end) return;
  unsigned workers = worker_count();
  uint64_t total = end - begin;
  if (workers <= 1 || total <= chunk) {
    for (uint64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  if (uint64_t(workers) > (total + chunk - 1) / chunk)
    workers = unsigned((total + chunk - 1) / chunk);
  std::atomic<uint64_t> cursor{begin};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      uint64_t lo = cursor.fetch_add(chunk);
      if (lo >= end) return;
      uint64_t hi = lo + chunk < end ? lo + chunk : end;
      try {
        for (uint64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qsep
