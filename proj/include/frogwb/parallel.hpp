#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace frogwb {

/// Global worker cap; 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(block) for block in [0, blocks) on up to max_threads() workers.
/// Blocks are claimed dynamically; callers write results into per-block
/// slots and reduce them in block order, so output does not depend on
/// scheduling.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// Deterministic pairwise sum of per-block partials.
double pairwise_sum(const std::vector<double>& parts);

}  // namespace frogwb
