#pragma once

#include <cstddef>
#include <functional>

namespace amt {

// Worker cap: the AMT_THREADS environment variable when set to a positive
// integer, otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

// Runs fn(0) .. fn(n-1) across workers. Each index is an independent task
// writing only its own slot in the caller's output, so the result is
// deterministic regardless of scheduling; exceptions are rethrown on the
// calling thread.
void parallel_map(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace amt
