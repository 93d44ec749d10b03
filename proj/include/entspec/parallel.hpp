#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace entspec {

/// Thread count from an explicit request, else ENTSPEC_THREADS, else the
/// hardware concurrency. Always >= 1.
int resolve_threads(std::optional<int> requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once, so writes to per-index slots need no locking. If any
/// call throws, the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace entspec
