#pragma once

#include <cstddef>
#include <functional>

namespace sensfeat {

// Number of workers to use when the caller passes 0.
std::size_t default_thread_count();

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = all cores).
// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sensfeat
