#pragma once

#include <cstddef>
#include <functional>

namespace hallmhd {

// Process-wide worker cap (the CLI --threads flag lands here). Default 1.
void set_thread_budget(int n);
int thread_budget();

// Runs fn(i) for i in [0, n). Work items must write to disjoint locations;
// the schedule partitions indices into contiguous chunks, so results are
// bit-identical for every thread count. Falls back to a serial loop when the
// budget is 1 or n is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hallmhd
