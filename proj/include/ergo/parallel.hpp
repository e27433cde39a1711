#pragma once

#include <cstddef>
#include <functional>

namespace ergo {

/// Number of worker threads: ERGO_THREADS if set (clamped to [1, 256]),
/// otherwise the hardware concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, n). Work items must be independent and write only
/// to their own output slots; results are then identical for any schedule.
/// The first exception thrown by a worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ergo
