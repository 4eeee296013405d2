#ifndef FGM_PARALLEL_HPP
#define FGM_PARALLEL_HPP

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace fgm {

// Worker count: explicit request > FGM_WORKERS env var > hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("FGM_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, total) on `workers` threads, static chunking.
// Results must be written into caller-owned per-index slots, which keeps the
// outcome independent of the worker count. The lowest-index exception wins.
template <typename Fn>
void parallel_for(long total, int workers, Fn&& fn) {
  if (total <= 0) return;
  if (workers < 1) workers = 1;
  if (workers == 1 || total == 1) {
    for (long i = 0; i < total; ++i) fn(i);
    return;
  }
  const int nthreads = static_cast<int>(std::min<long>(workers, total));
  std::vector<std::exception_ptr> errors(nthreads);
  std::vector<long> error_index(nthreads, -1);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const long chunk = (total + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    const long begin = t * chunk;
    const long end = std::min(total, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      for (long i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
          error_index[t] = i;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < nthreads; ++t)
    if (errors[t]) std::rethrow_exception(errors[t]);
}

}  // namespace fgm

#endif
