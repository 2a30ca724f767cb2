#ifndef SHUTTLE_PARALLEL_HPP
#define SHUTTLE_PARALLEL_HPP

#include <functional>

namespace shuttle::par {

/// Worker count: SHUTTLE_SIM_THREADS if set (>= 1), else hardware threads.
int thread_count();

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size
/// chunks. Chunk boundaries depend only on chunk_size, never on the worker
/// count, so per-chunk results can be combined in chunk order for
/// bit-reproducible totals.
void parallel_chunks(long n, long chunk_size,
                     const std::function<void(long, long, long)>& fn);

}  // namespace shuttle::par

#endif
