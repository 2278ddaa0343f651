#pragma once

#include <functional>

namespace rumkit {

// Worker count: RUMKIT_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int thread_cap();

// Runs f(0..n-1) across up to thread_cap() threads. Callers get determinism by
// writing results into per-index slots. Exceptions from workers are rethrown.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace rumkit
