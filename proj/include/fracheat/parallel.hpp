#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fracheat {

// Work queue over cells 0..count-1 on at most `jobs` threads (jobs <= 1 runs
// inline).  The callable writes its result into a slot indexed by cell, so
// merged output is independent of scheduling.  The first exception thrown by
// a worker is rethrown on the caller's thread after the queue drains.
inline void run_cells(int jobs, int count, const std::function<void(int)>& work) {
  if (count <= 0) return;
  if (jobs < 1) throw std::invalid_argument("run_cells: jobs must be >= 1");
  if (jobs == 1 || count == 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const int cell = next.fetch_add(1);
      if (cell >= count) return;
      try {
        work(cell);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  const int n = std::min(jobs, count);
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fracheat
