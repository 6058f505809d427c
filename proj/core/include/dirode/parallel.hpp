#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dirode {

// Worker count: DIRODE_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

inline constexpr std::size_t kParallelThreshold = 16384;

// Runs body(begin, end) over contiguous chunks. Each index is written by one
// worker only, so results do not depend on the thread count. The first
// exception thrown by a worker (in chunk order) is rethrown after the join.
// cost is the work per index in node-update units.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t cost = 1) {
  const unsigned workers =
      n * cost >= kParallelThreshold ? static_cast<unsigned>(std::min<std::size_t>(thread_count(), n)) : 1u;
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, &errors, w, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace dirode
