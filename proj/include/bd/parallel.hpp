#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bd {

// Runs fn(k) for k = 0..count-1 across `threads` workers (0: hardware
// concurrency). fn must write only to per-index slots; results are then
// independent of the schedule. The first exception wins and is rethrown on
// the calling thread after all workers drain.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }
  if (threads == 1 || count <= 1) {
    for (long k = 0; k < count; ++k) fn(k);
    return;
  }
  if (threads > count) threads = static_cast<int>(count);

  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const long k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= count) return;
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bd
