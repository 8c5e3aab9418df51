#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx {

struct DpOptions {
  // Tree height bound; defaults to n-1 and is capped by the width of a
  // non-extending scheme.
  std::optional<std::int64_t> height;
  // Maximum DP cells (levels x states x length steps) one solve may touch.
  std::uint64_t work_limit = 1'000'000'000;
};

struct Solution {
  CostReport report;
  TreeShape shape;
};

// Minimum decode time over prefix trees of height <= h with codelength
// <= budget. Among optimal trees the shortest one is returned.
// Throws kInfeasible (budget below the Huffman optimum or no tree of the
// allowed height fits), kSchemeTooShort, kWorkLimitExceeded.
Solution solve_exact(const FrequencyTable& table, const BlockingScheme& scheme, Count budget,
                     const DpOptions& options = {});

// The leading blocks needed to address a tree of height max(1, n-1),
// repeating the last block of an extending scheme; a fixed scheme stops at
// its declared blocks.
std::vector<Block> effective_blocks(const BlockingScheme& scheme, std::size_t n);

// Decode values Dec(<x_0..x_m>) over all x with sum n, where the x_m lowest
// frequencies sit at block level m, the next x_{m-1} at level m-1, and so
// on, each charged its cumulative block cost; the x_0 most frequent symbols
// are charged nothing. Sorted, without duplicates.
std::vector<Rational> enumerate_decode_values(const FrequencyTable& table,
                                              const BlockingScheme& scheme);

// Strongly polynomial solve for a constant number m of block levels: the DP
// runs over decode values instead of lengths and keeps, per state, the
// Pareto list of (decode value, minimum codelength). Height is bounded by
// the effective blocks' total width.
// Throws kNoValidTree when no tree meets the budget and kWorkLimitExceeded
// when m > 3 or n^(m+3) exceeds options.work_limit.
Solution solve_fixed_block_levels(const FrequencyTable& table, const BlockingScheme& scheme,
                                  Count budget, const DpOptions& options = {});

}  // namespace dpfx
