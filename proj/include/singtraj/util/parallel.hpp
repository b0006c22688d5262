#pragma once

#include <cstddef>
#include <functional>

namespace singtraj {

/// Worker count: SINGTRAJ_THREADS when set to a positive integer, else the
/// hardware concurrency.
unsigned thread_budget();

/// Runs body(0..n-1) on up to thread_budget() threads. Each index is handled
/// exactly once; the first exception is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace singtraj
