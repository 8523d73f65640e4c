#pragma once

#include <cstddef>
#include <functional>

namespace vexlab {

// Worker count used by parallel_for. Defaults to hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
// one chunk per worker. Runs inline when a single worker is configured.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace vexlab
