#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rodlif::detail {

// Runs fn(i) for i in [0, count) on up to `threads` workers (strided
// assignment). fn(i) must only touch slot i of any shared output, so the
// result is identical for every worker count. Exceptions are rethrown on the
// calling thread.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int nw = std::min(threads, count);
  if (nw <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(nw);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += nw) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rodlif::detail
