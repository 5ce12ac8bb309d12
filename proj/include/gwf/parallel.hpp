#ifndef GWF_PARALLEL_HPP
#define GWF_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gwf {

// Process-wide worker count. 0 = hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks, one per
// worker; callers must only write to disjoint state per index so the result
// is independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace gwf

#endif
