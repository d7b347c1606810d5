#pragma once

#include <cstddef>
#include <functional>

namespace horoflow {

/// Worker count: HOROFLOW_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(k) for k in [0, n) over contiguous chunks. Callers write results
/// into slot k only, so outputs do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace horoflow
