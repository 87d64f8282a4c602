#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace borrowoc {

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 means
/// hardware concurrency). Indices are dealt out in contiguous blocks; callers
/// write results into per-index slots so output never depends on scheduling.
/// If any call throws, work above that index is abandoned and the exception
/// from the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

  std::mutex mutex;
  std::atomic<std::size_t> failed_index{std::numeric_limits<std::size_t>::max()};
  std::exception_ptr failure;

  auto run_block = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && i < failed_index.load(); ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_index.load()) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  if (workers <= 1) {
    run_block(0, count);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(count, w * block);
      const std::size_t end = std::min(count, begin + block);
      threads.emplace_back(run_block, begin, end);
    }
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace borrowoc
