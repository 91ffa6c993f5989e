#pragma once

#include <cstddef>
#include <functional>

namespace gkw {

/// Worker count: hardware concurrency, capped by the GKW_THREADS environment
/// variable when it is set to a positive integer.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; work is
/// split in contiguous blocks so results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gkw
