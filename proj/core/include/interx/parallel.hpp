#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace interx {

/// Calls body(worker, index) for every index in [begin, end) on `workers`
/// threads. Indices are handed out in chunks; which worker gets which index is
/// unspecified, so `body` must only feed order-independent aggregates.
/// The first exception thrown by any worker is rethrown here.
template <class Body>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned workers, Body&& body,
                  std::uint64_t chunk = 16) {
  if (begin >= end) return;
  workers = std::max(1U, workers);
  if (workers == 1) {
    for (std::uint64_t i = begin; i < end; ++i) body(0U, i);
    return;
  }
  std::atomic<std::uint64_t> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::uint64_t lo = next.fetch_add(chunk);
          if (lo >= end) break;
          const std::uint64_t hi = std::min(end, lo + chunk);
          for (std::uint64_t i = lo; i < hi; ++i) body(w, i);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(end);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace interx
