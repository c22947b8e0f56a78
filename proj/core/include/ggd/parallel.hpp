#pragma once

#include <cstddef>
#include <functional>

namespace ggd {

// Worker cap for element-parallel loops. 0 means hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [0, n). Work is split into contiguous chunks, so
// any per-index results written by body are independent of the thread
// count. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ggd
