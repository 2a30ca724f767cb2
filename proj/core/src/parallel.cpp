#include "shuttle/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace shuttle::par {

int thread_count() {
  if (const char* env = std::getenv("SHUTTLE_SIM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(long n, long chunk_size,
                     const std::function<void(long, long, long)>& fn) {
  if (n <= 0) return;
  if (chunk_size <= 0) throw std::invalid_argument("chunk_size must be > 0");
  const long n_chunks = (n + chunk_size - 1) / chunk_size;
  const int workers =
      static_cast<int>(std::min<long>(thread_count(), n_chunks));

  auto run_chunk = [&](long c) {
    const long begin = c * chunk_size;
    const long end = std::min(n, begin + chunk_size);
    fn(c, begin, end);
  };

  if (workers <= 1) {
    for (long c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
        run_chunk(c);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace shuttle::par
