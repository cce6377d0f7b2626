#pragma once

#include <cstddef>
#include <functional>

namespace client {

// Worker count for row-parallel kernels. Defaults to the CLIENT_THREADS
// environment variable, else 1. Results are bitwise identical for a fixed count.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
// Falls back to a single inline call when n is small or one thread is configured.
void parallel_for(std::size_t n, std::size_t min_chunk,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace client
