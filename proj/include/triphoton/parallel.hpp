#pragma once

#include <cstddef>
#include <functional>

namespace triphoton {

// Worker count from TRIPHOTON_THREADS (unset or 0 = hardware concurrency).
unsigned thread_count();

// Runs body(i) for i in [0, n) across thread_count() workers. Each index is
// handled by exactly one call; callers write only to per-index storage so
// results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace triphoton
