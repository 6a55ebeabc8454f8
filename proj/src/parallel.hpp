#pragma once

#include <cstddef>
#include <functional>

namespace ulab {

/// Worker count: UNIVALENCE_LAB_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads, in contiguous
/// blocks. The first exception thrown (lowest block) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ulab
