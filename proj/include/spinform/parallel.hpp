#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace spinform {

// Worker cap for internal sweeps: hardware concurrency, reduced by the
// SPINFORM_THREADS environment variable when set. Always >= 1.
inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  long n = hw ? static_cast<long>(hw) : 1;
  if (const char* env = std::getenv("SPINFORM_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, cap);
  }
  return static_cast<int>(std::max(n, 1L));
}

// Splits [0, n) into contiguous per-worker chunks. Workers get disjoint
// ranges and distinct slot indices, so callers that reduce into
// worker-indexed slots and merge in slot order stay deterministic.
template <class Body>
void parallel_ranges(uint64_t n, Body&& body /* (slot, lo, hi) */) {
  uint64_t workers = static_cast<uint64_t>(worker_count());
  if (n < (1u << 16) || workers <= 1) {
    if (n > 0) body(0, uint64_t{0}, n);
    return;
  }
  workers = std::min<uint64_t>(workers, n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  uint64_t chunk = n / workers;
  uint64_t rem = n % workers;
  uint64_t lo = 0;
  for (uint64_t w = 0; w < workers; ++w) {
    uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
    threads.emplace_back([&body, w, lo, hi] { body(static_cast<int>(w), lo, hi); });
    lo = hi;
  }
  for (auto& t : threads) t.join();
}

}  // namespace spinform
