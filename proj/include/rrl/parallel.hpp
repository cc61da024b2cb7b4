#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rrl {

/// Upper bound on worker threads used internally. 0 means "hardware
/// concurrency". Process-wide.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

// Runs fn(i) for i in [0, n). Indices are split into contiguous blocks, one
// per worker; fn must only write to slots owned by i, so results do not depend
// on the thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_block = 256) {
  std::size_t workers = std::max<std::size_t>(1, thread_cap());
  workers = std::min(workers, (n + min_block - 1) / std::max<std::size_t>(min_block, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t block = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t lo = w * block;
      std::size_t hi = std::min(n, lo + block);
      if (lo >= hi) break;
      pool.emplace_back([&fn, &errors, w, lo, hi] {
        try {
          for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  // Lowest block wins so the reported error does not depend on scheduling.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rrl
