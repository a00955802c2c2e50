#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpacf {

/// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads. Work is
/// claimed index by index; callers write results into slot i so the output
/// does not depend on the thread count. The first exception is rethrown.
template <typename Fn>
void parallel_for(long n, Fn&& fn, unsigned max_threads = 0) {
  unsigned workers = max_threads ? max_threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max(n, 1L))));
  if (workers == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (long i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lpacf
