// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace cloudtint {

namespace detail {
inline std::atomic<unsigned>& thread_cap_storage() {
  static std::atomic<unsigned> cap{0};
  return cap;
}
}  // namespace detail

/// Caps worker parallelism for every data-parallel pass; 0 means one worker
/// per hardware thread.
inline void set_thread_cap(unsigned n) { detail::thread_cap_storage().store(n); }

inline unsigned thread_cap() { return detail::thread_cap_storage().load(); }

inline unsigned effective_threads() {
  unsigned n = thread_cap();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

/// Reads CLOUDTINT_THREADS; returns 0 (auto) when unset or malformed.
inline unsigned thread_cap_from_env() {
  const char* v = std::getenv("CLOUDTINT_THREADS");
  if (!v || !*v) return 0;
  try {
    long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(n) : 0;
  } catch (...) {
    return 0;
  }
}

/// Runs fn(begin, end) over disjoint contiguous ranges covering [0, n).
/// Ranges are small enough to not be worth splitting below `grain`.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t grain = 65536) {
  const std::size_t workers =
      std::min<std::size_t>(effective_threads(), n / std::max<std::size_t>(grain, 1));
  if (workers <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  const std::size_t step = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * step;
    const std::size_t end = std::min(n, begin + step);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cloudtint
