#pragma once

#include <cstddef>
#include <functional>

namespace nonlocal {

/// Runs f(0..n-1) on up to `threads` workers (0 = hardware concurrency).
/// Each index runs exactly once; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, unsigned threads = 0);

}  // namespace nonlocal
