#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace parteq {

/* Worker count: hardware concurrency capped by PARTITION_EQ_THREADS (>= 1). */
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PARTITION_EQ_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

/* Runs fn(i) for i in [0, n).  Results must be written by index so the
 * outcome is independent of scheduling. */
template <class Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace parteq
