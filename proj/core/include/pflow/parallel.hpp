#ifndef PFLOW_PARALLEL_HPP
#define PFLOW_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace pflow {

// Global worker count. 0 means "use hardware concurrency".
// Overridable via the PFLOW_THREADS environment variable (read once).
void set_thread_count(int n);
int thread_count();

// Runs body(begin, end) over fixed-size chunks of [0, n).
// Chunk boundaries do not depend on the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Sum of chunk_sum(begin, end) over the same fixed chunks, accumulated in
// chunk order, so the result is bitwise independent of the thread count.
double parallel_reduce(
    std::size_t n,
    const std::function<double(std::size_t, std::size_t)>& chunk_sum);

}  // namespace pflow

#endif
