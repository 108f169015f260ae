#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace xxz::app {

// Evaluates fn(0..n-1) on up to jobs threads. Results keep input order; the
// lowest-index exception is rethrown after all workers finish.
template <class T, class Fn>
std::vector<T> parallel_map(int n, int jobs, Fn fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> err(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace xxz::app
