#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace pindex {

// Worker count resolution: explicit request, else PINDEX_THREADS, else the
// hardware concurrency (at least 1).
int resolve_worker_count(std::optional<int> requested);

// Runs fn(0..count-1) across `workers` threads. Work items are claimed from a
// shared atomic counter, so the assignment of items to threads is dynamic but
// the items themselves are pure functions of their index; callers must write
// results into per-index slots. The first exception thrown by any item is
// rethrown after all workers finish.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace pindex
