#pragma once

#include <cstddef>
#include <functional>

namespace nmtel {

// Index-parallel loop over [0, n) on `jobs` threads (0 = hardware
// concurrency).  Bodies must not share mutable state except through their own
// index slot; the first exception thrown by any body is rethrown after join.
void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace nmtel
