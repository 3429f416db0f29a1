#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nullflow {

// Worker count: NULLFLOW_THREADS caps it, otherwise the hardware concurrency.
inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NULLFLOW_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested >= 1) return static_cast<unsigned>(requested);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

// Runs fn(i) for i in [0, n). Each index is visited exactly once, so per-index
// writes are race free and results do not depend on the thread count.
template <class Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn) {
  constexpr std::ptrdiff_t kMinChunk = 2048;
  const auto workers =
      std::min<std::ptrdiff_t>(thread_count(), std::max<std::ptrdiff_t>(1, n / kMinChunk));
  if (workers <= 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::ptrdiff_t chunk = (n + workers - 1) / workers;
  for (std::ptrdiff_t w = 0; w < workers; ++w) {
    const std::ptrdiff_t begin = w * chunk;
    const std::ptrdiff_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::ptrdiff_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace nullflow
