#pragma once

#include <cstddef>
#include <functional>

namespace lgcn {

/// Worker count: LGCN_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and `chunk`, never on the thread count, so reductions
/// that combine per-chunk results in chunk order are deterministic.
void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t chunk_index, std::size_t begin, std::size_t end)>& fn);

}  // namespace lgcn
