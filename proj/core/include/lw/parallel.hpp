#pragma once

#include <functional>

namespace lw {

/// Number of workers: hardware concurrency capped by the LW_THREADS
/// environment variable (minimum 1).
int worker_count();

/// Runs fn(i) for i in [0, n). Work is chunked across workers; every slot is
/// written by exactly one invocation, so results are deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace lw
