#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace corank {

namespace detail {

inline std::atomic<unsigned>& thread_count_slot() {
  static std::atomic<unsigned> count{0};  // 0 = use hardware concurrency
  return count;
}

}  // namespace detail

/// Sets the worker count for data-parallel loops; 0 restores the default
/// (hardware concurrency). Results never depend on this setting: workers
/// only ever write disjoint output ranges.
inline void set_thread_count(unsigned count) {
  detail::thread_count_slot().store(count, std::memory_order_relaxed);
}

inline unsigned thread_count() {
  unsigned count = detail::thread_count_slot().load(std::memory_order_relaxed);
  if (count == 0) {
    count = std::thread::hardware_concurrency();
  }
  return count == 0 ? 1 : count;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). With one worker the
/// call degenerates to fn(0, n) on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(thread_count(), n == 0 ? 1 : n);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::once_flag error_once;

  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::call_once(error_once, [&] {
          first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        });
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failed.load(std::memory_order_relaxed)) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace corank
