#pragma once

#include <cstddef>
#include <functional>

namespace thermagrid {

/// Worker count for data-parallel loops. Reads THERMAGRID_THREADS once per
/// call; 0 or unset means hardware concurrency. Always at least 1.
unsigned thread_count();

/// Runs fn over [0, n) split into contiguous chunks, one per worker. Each
/// chunk writes only its own slots, so results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace thermagrid
