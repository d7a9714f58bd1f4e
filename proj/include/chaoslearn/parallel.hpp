#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "chaoslearn/types.hpp"

namespace chaoslearn {

// Runs body(begin, end) over contiguous chunks of [0, n). Writes into
// disjoint output slots stay deterministic regardless of worker count.
// n_threads == 0 picks hardware concurrency. The first chunk's exception
// (lowest begin index) is rethrown after all workers join.
inline void parallel_for(Index n,
                         const std::function<void(Index, Index)>& body,
                         int n_threads = 0) {
  if (n <= 0) return;
  int workers = n_threads > 0
                    ? n_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > n) workers = static_cast<int>(n);

  if (workers == 1) {
    body(0, n);
    return;
  }

  const Index chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const Index begin = w * chunk;
    const Index end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace chaoslearn
