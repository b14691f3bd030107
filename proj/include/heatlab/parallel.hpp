#pragma once

#include <cstddef>
#include <functional>

namespace heatlab {

/// Worker count: HEATLAB_THREADS if set (>= 1), else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across up to worker_count() threads.
/// Each index is processed exactly once; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace heatlab
