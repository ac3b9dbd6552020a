#pragma once

#include <cstddef>
#include <functional>

namespace modlie {

// Worker count from MODLIE_THREADS (default 1).
size_t thread_count();

// Runs body(i) for i in [0, n); results must be written to per-index slots
// so output order never depends on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace modlie
