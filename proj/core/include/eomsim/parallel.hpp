#pragma once

#include <cstddef>
#include <functional>

namespace eomsim {

// Worker count from EOMSIM_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Calls body(i) for i in [0, n) across worker_count() threads. Each index is
// visited exactly once; callers write results into pre-sized slots, so the
// output order never depends on scheduling. The first exception thrown by
// any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace eomsim
