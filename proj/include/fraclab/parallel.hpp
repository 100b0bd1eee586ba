#pragma once

#include <cstddef>
#include <functional>

namespace fraclab {

/// Worker count: FRACLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency. Never affects results, only scheduling.
int worker_count();

/// Calls body(begin, end) over disjoint chunks covering [0, n), possibly from
/// several threads. Rethrows the first exception after all workers finish.
void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fraclab
