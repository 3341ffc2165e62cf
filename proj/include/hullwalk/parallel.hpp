#pragma once

#include <cstddef>
#include <functional>

namespace hullwalk {

/// Worker count: `requested` if non-zero, else the hardware concurrency,
/// capped by the HULLWALK_THREADS environment variable when it is set.
unsigned resolve_threads(unsigned requested = 0);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Tasks are
/// handed out dynamically; the first exception thrown by any task is
/// rethrown on the calling thread after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace hullwalk
