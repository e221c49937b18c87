#pragma once

#include <cstddef>
#include <functional>

namespace turlab {

/// Worker count: hardware concurrency, capped by the TURLAB_THREADS
/// environment variable when it holds a positive integer.
std::size_t worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace turlab
