#pragma once

#include <cstddef>
#include <functional>

namespace selberg {

// Worker count: SELBERG_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// depend only on n and the chunk size, never on the worker count, so callers
// that write results by index stay deterministic.
void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace selberg
