#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>
#include <vector>

#include "canonical.hpp"

namespace listcrit {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Items are handed
/// out through a shared counter; the first exception is rethrown after all
/// workers stop.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(workers, count); ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Set of canonical keys with atomic insert-if-absent.
class ConcurrentKeySet {
 public:
  bool insert(const CanonicalKey& k) {
    std::lock_guard lock(mutex_);
    return keys_.insert(k).second;
  }
  bool contains(const CanonicalKey& k) const {
    std::lock_guard lock(mutex_);
    return keys_.count(k) != 0;
  }
  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return keys_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> keys_;
};

}  // namespace listcrit
