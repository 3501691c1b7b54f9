#pragma once

#include <functional>

namespace ringsim {

// Runs fn(i) for i in [0, count) on up to `jobs` threads (0 = hardware
// concurrency). Work items must write results only to their own slot so the
// outcome is independent of scheduling. The first exception thrown by a work
// item is rethrown after all threads join.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace ringsim
