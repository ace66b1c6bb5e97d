#pragma once

#include <cstddef>
#include <functional>

namespace nevlab {

// Number of worker threads: min(hardware, NEVLAB_THREADS) with a floor of 1.
int worker_count();

// Runs fn(i) for i in [0, n). Work items must be independent; callers that
// collect results write into pre-sized storage indexed by i, so the outcome
// is identical to a serial loop regardless of scheduling. Nested calls run
// serially inside an already-parallel region.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nevlab
