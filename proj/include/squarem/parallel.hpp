#pragma once

// Thread-count control shared by the OpenMP kernels and the replicate loops.

namespace squarem {

/// Threads requested through BENCH_THREADS, else the OpenMP default.
/// Values below 1 or unparsable strings fall back to the default.
int configured_threads();

/// Overrides the thread count for the rest of the process (0 restores the
/// environment/default behaviour).
void set_thread_override(int threads);

/// Threads to use for a loop of `work` independent items; 1 when the loop is
/// too small to be worth forking.
int threads_for(long work, long min_work_per_thread = 1);

}  // namespace squarem
