#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ctk {

/// Worker-thread cap: CONTEXTUALITY_KIT_THREADS when set and >= 1, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_cap();

/// Runs fn(0) .. fn(count-1) across up to thread_cap() workers. Indices are
/// claimed atomically; callers keep determinism by writing only to their own
/// index's slot. The first exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, Fn fn) {
  std::size_t workers = std::min<std::size_t>(thread_cap(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto body = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ctk
