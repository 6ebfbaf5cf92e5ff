#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace pcp {

/// Caps the number of worker threads used by parallel loops. n <= 0 resets
/// to the hardware default. All parallel results are schedule-independent,
/// so this only affects speed, never values.
void set_max_workers(int n);
int max_workers();

/// Runs fn(i) for i in [0, n). Iterations must touch disjoint state.
/// Exceptions are captured and the one thrown by the lowest index is
/// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Deterministic pairwise (cascade) summation; result depends only on the
/// contents and order of xs, never on thread schedules.
double pairwise_sum(std::span<const double> xs);

}  // namespace pcp
