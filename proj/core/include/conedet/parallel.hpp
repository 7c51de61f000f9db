#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace conedet {

namespace detail {
inline std::atomic<int> g_max_threads{0};
}

// Global cap on worker threads. 0 means "use hardware concurrency".
// The CLI wires --threads / CONEDET_THREADS into this.
inline void set_max_threads(int n) { detail::g_max_threads.store(n < 0 ? 0 : n); }

inline int max_threads() {
  int v = detail::g_max_threads.load();
  if (v > 0) return v;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Chunked parallel loop over [begin, end). The body must write only to
// per-index slots so the result does not depend on the thread count;
// reductions are done by the caller in index order.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, F&& body) {
  const std::size_t n = end > begin ? end - begin : 0;
  if (n == 0) return;
  std::size_t workers = static_cast<std::size_t>(max_threads());
  workers = std::min<std::size_t>(workers, n);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace conedet
