#pragma once

#include <cstddef>
#include <functional>

namespace su2phase {

/// Worker count: `requested` if positive, else SU2PHASE_THREADS if set and
/// positive, else the hardware concurrency.
int resolve_threads(int requested = 0);

/// Calls body(i) for i in [0, count), split into contiguous blocks over
/// `threads` workers. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace su2phase
