#ifndef REACHPROBE_PARALLEL_HPP
#define REACHPROBE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace reachprobe {

/// Worker count used by parallel_for. Resolution order: set_thread_count()
/// override, then the REACHPROBE_THREADS environment variable, then
/// std::thread::hardware_concurrency().
unsigned thread_count();

/// Overrides the worker count for this process; 0 restores automatic choice.
void set_thread_count(unsigned n);

/// Calls body(begin, end) over disjoint chunks covering [0, n). Chunks may
/// run concurrently; callers write results by index and reduce afterwards so
/// the outcome never depends on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace reachprobe

#endif  // REACHPROBE_PARALLEL_HPP
