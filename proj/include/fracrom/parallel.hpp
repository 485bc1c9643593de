#pragma once

#include <cstddef>
#include <functional>

namespace fracrom {

/// Worker budget: FRAC_ROM_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned thread_budget();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 selects
/// thread_budget()). The first exception thrown by any body is rethrown after
/// all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace fracrom
