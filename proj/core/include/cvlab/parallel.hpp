#pragma once

#include <cstddef>
#include <functional>

namespace cvlab {

// Runs fn(i) for i in [0, count) on `threads` workers pulling from a shared
// counter.  Callers write results into per-index slots, so output does not
// depend on the schedule.  threads <= 1 runs inline.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace cvlab
