#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace surfguard {

// Worker count for a kernel. 0 means "one per hardware thread".
struct Exec {
  int threads = 0;

  int resolved() const noexcept {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

// Splits [0, count) into contiguous chunks and runs fn(begin, end) on each.
// Chunks are disjoint and each item is processed by exactly one call, so a
// kernel that writes only its own rows produces the same bytes for any
// thread count.
template <typename Fn>
void parallel_for(int count, Exec exec, Fn&& fn) {
  if (count <= 0) return;
  const int workers = std::min(exec.resolved(), count);
  if (workers <= 1) {
    fn(0, count);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&](int begin, int end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const int base = count / workers;
  const int extra = count % workers;
  int begin = 0;
  for (int w = 0; w < workers; ++w) {
    const int end = begin + base + (w < extra ? 1 : 0);
    if (w + 1 == workers) {
      run(begin, end);
    } else {
      pool.emplace_back(run, begin, end);
    }
    begin = end;
  }
  pool.clear();  // joins
  if (failure) std::rethrow_exception(failure);
}

}  // namespace surfguard
