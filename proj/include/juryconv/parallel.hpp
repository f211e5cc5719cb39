#pragma once

#include <cstddef>
#include <functional>

namespace juryconv {

// Worker count: JURYCONV_THREADS if set (>= 1), else hardware concurrency.
std::size_t worker_count();

// Runs body(0..count-1) across worker_count() threads. Each index is visited
// exactly once; the first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace juryconv
