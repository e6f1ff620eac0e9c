#pragma once

#include <cstddef>
#include <functional>

namespace gamblekit {

/// Worker count for internal parallel loops: GAMBLEKIT_THREADS when set to a
/// positive integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, count) on up to `workers` threads.
/// Each index is visited exactly once; callers write results by index so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers have joined.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace gamblekit
