#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace xtrellis {

/// Explicit request wins, then ECC_THREADS, then 1.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ECC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

/// Splits [0, total) into contiguous shards and runs body(begin, end, shard)
/// on each. Callers reduce per-shard results with an order-independent
/// operation so output does not depend on the thread count.
template <class Body>
void parallel_shards(std::uint64_t total, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < 2 * threads) {
    body(std::uint64_t{0}, total, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t b = std::min<std::uint64_t>(total, t * chunk);
    const std::uint64_t e = std::min<std::uint64_t>(total, b + chunk);
    pool.emplace_back([&, b, e, t] {
      try {
        body(b, e, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace xtrellis
