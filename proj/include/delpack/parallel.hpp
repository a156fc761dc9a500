#pragma once

#include <cstddef>
#include <functional>

namespace delpack {

/// Worker count: DELONE_PACK_THREADS if set and positive, else the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Results must be written to per-index slots so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace delpack
