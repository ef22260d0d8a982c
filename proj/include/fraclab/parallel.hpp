#pragma once

#include <cstddef>
#include <functional>

namespace fraclab {

/// Worker count: FRACLAB_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// processed exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The exception from the lowest failing
/// index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fraclab
