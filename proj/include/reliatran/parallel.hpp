#pragma once

#include <cstddef>
#include <functional>

namespace reliatran {

// Runs fn(0) .. fn(n - 1), spreading calls over up to `threads` workers.
// threads <= 1 runs inline on the calling thread. The first exception thrown
// by any call is rethrown on the caller after all workers have stopped.
// fn must be safe to invoke concurrently for distinct indices.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace reliatran
