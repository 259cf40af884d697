#pragma once

#include <cstddef>
#include <functional>

namespace lve {

// Global worker bound (CLI --threads). 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

// Run fn(i) for i in [0, n). Results must be written into
// index-addressed slots by the caller; the reduction over slots is then
// sequential, so outputs are bit-identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lve
