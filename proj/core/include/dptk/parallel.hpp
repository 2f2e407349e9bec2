#pragma once

#include <cstddef>
#include <functional>

namespace dptk {

void set_thread_count(int threads);
int thread_count();

// Runs body(begin, end) over contiguous chunks of [0, count). Each index is
// visited by exactly one call, so writes to per-index outputs stay
// deterministic regardless of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dptk
