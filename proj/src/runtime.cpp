#include "curvectrl/runtime.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace curvectrl {

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("CURVECTRL_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    const long hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<int>(std::min(v, hw));
  }();
  return cap;
}

std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

void for_each_chunk(std::size_t n, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& work) {
  const std::size_t chunks = chunk_count(n, chunk_size);
  if (chunks == 0) return;
  const int threads = std::min<std::size_t>(thread_cap(), chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      work(c * chunk_size, std::min(n, (c + 1) * chunk_size), c);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t c = t; c < chunks; c += threads)
        work(c * chunk_size, std::min(n, (c + 1) * chunk_size), c);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace curvectrl
