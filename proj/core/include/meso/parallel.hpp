#pragma once

#include <cstddef>
#include <functional>

namespace meso {

// Worker count: MESO_THREADS (if set to a positive integer) wins over
// `requested`; 0 means one per hardware thread.
std::size_t resolve_thread_count(std::size_t requested);

// Runs fn(0) .. fn(n - 1) on up to `threads` workers. Indices are handed out
// dynamically, so fn must write only to its own slot. The first exception
// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace meso
