#ifndef CURVECTRL_RUNTIME_HPP
#define CURVECTRL_RUNTIME_HPP

#include <cstddef>
#include <functional>

namespace curvectrl {

// Number of worker threads for element loops. Defaults to 1 so that runs
// are single-threaded unless CURVECTRL_THREADS asks for more; results are
// bitwise independent of the thread count (fixed chunking, ordered reduce).
int thread_cap();

// Partitions [0, n) into fixed-size chunks, runs `work(begin, end, chunk)`
// on up to thread_cap() threads, chunk indices are dense 0..n_chunks-1.
// The chunk layout depends only on n, never on the thread count.
std::size_t chunk_count(std::size_t n, std::size_t chunk_size);
void for_each_chunk(std::size_t n, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& work);

}  // namespace curvectrl

#endif
