#pragma once

#include <functional>

namespace spintomo {

// Number of worker threads: hardware concurrency capped by the
// QPU_TOMO_THREADS environment variable (>= 1).
int worker_thread_count();

// Static partition of [0, n) across workers; falls back to serial for small n.
void parallel_for(long n, const std::function<void(long, long)>& chunk_fn);

} // namespace spintomo
