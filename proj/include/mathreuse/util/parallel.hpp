#pragma once

#include <cstddef>
#include <functional>

namespace mathreuse::util {

// Worker count: MATHREUSE_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Calls fn(i) for every i in [0, n) on up to `workers` threads. Each index is
// visited exactly once; results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t workers = worker_count());

}  // namespace mathreuse::util
