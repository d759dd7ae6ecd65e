#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace frogcert {

/// Worker count: FROGCERT_THREADS if set and positive, else the hardware count.
inline int default_workers() {
  if (const char* env = std::getenv("FROGCERT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on `workers` threads and returns the
/// results indexed by i. Callers reduce in index order, so aggregates do not
/// depend on the worker count.
template <typename Fn>
auto run_indexed(std::int64_t count, int workers, Fn fn) -> std::vector<decltype(fn(std::int64_t{}))> {
  using Result = decltype(fn(std::int64_t{}));
  std::vector<Result> results(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1)));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t i; (i = next.fetch_add(1)) < count;) {
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace frogcert
