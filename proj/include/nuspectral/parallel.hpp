#pragma once

#include <cstddef>
#include <functional>

namespace nuspectral {

/// Runs fn(i) for i in [begin, end) over a static partition of worker
/// threads. Each index is visited exactly once; callers own any output
/// slots, so results are deterministic regardless of scheduling. The
/// first exception thrown by any worker is rethrown. Thread count comes
/// from hardware_concurrency, clamped by the NUSPECTRAL_THREADS
/// environment variable when set.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

std::size_t worker_thread_count();

}  // namespace nuspectral
