#pragma once

#include <cstddef>
#include <functional>

namespace rmtev {

// Name of the environment variable that sets the worker count.
inline constexpr const char* kThreadsEnv = "RMTEV_THREADS";

// Workers to use: `requested` if nonzero, else RMTEV_THREADS, else the
// machine's hardware concurrency.
unsigned worker_count(unsigned requested = 0);

// Runs body(i) for i in [0, count) on `workers` threads. Each index runs
// exactly once. If any call throws, the exception from the smallest failing
// index is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace rmtev
