#pragma once

#include <cstddef>
#include <functional>

namespace manifold_align {

// Worker count from MANIFOLD_ALIGN_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Runs body(i) for i in [begin, end) across worker_count() threads in
// contiguous chunks. Bodies must only write state owned by index i, which
// keeps results identical to a sequential loop.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace manifold_align
