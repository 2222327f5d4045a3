#pragma once

#include <cstddef>
#include <functional>

namespace anglat {

/// Worker count: explicit argument if > 0, else ANGLAT_THREADS env var,
/// else hardware concurrency.
int resolve_worker_count(int requested = 0);

/// Chunked parallel loop over [0, n).  Deterministic partition: results
/// written by index, so output ordering never depends on scheduling.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  int workers = 0);

} // namespace anglat
