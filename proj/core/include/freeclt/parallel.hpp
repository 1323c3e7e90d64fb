#pragma once

#include <cstddef>
#include <functional>

namespace freeclt {

/// Worker count: FREECLT_THREADS when set (clamped to >= 1), otherwise the
/// hardware concurrency.
int thread_count();

/// Runs fn(i) for i in [0, count) across thread_count() workers in contiguous
/// chunks. Results must be written to preallocated slots so the outcome is
/// independent of the schedule; the first exception thrown by any worker is
/// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace freeclt
