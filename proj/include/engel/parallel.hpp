#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace engel {

namespace detail {
inline thread_local bool in_parallel_worker = false;
}

/// Calls f(i) for i in [0, n) on a small thread pool. Work is handed out by
/// index, so results written to slot i do not depend on scheduling. The first
/// exception thrown by any task is rethrown after all workers join. Nested
/// calls from a worker run serially.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t threads = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (threads <= 1 || detail::in_parallel_worker) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      detail::in_parallel_worker = true;
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace engel
