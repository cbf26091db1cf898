#pragma once

#include <cstddef>
#include <functional>

namespace qbattery {

/// Worker count: hardware concurrency, capped by QBATTERY_THREADS when set
/// to a positive integer.
int worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// Indices are split into contiguous blocks; the first exception thrown by
/// any worker is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qbattery
