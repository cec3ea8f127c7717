#pragma once

#include <cstddef>
#include <functional>

namespace fimstat {

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Work items are
/// claimed from a shared counter; callers write results into slot i, so
/// output order never depends on scheduling. The first exception thrown by
/// any item is rethrown after all threads join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace fimstat
