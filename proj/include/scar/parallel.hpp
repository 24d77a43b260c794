#pragma once

#include <cstddef>
#include <functional>

namespace scar {

/// Worker count from SCAR_THREADS (default 1).
int default_threads();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
/// written by index, so the outcome never depends on scheduling. The first
/// exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace scar
