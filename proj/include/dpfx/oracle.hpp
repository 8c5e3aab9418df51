#pragma once

#include <cstdint>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx::oracle {

inline constexpr std::size_t kMaxOracleSymbols = 10;

// Every valid shape for n symbols with height <= h_max, in lexicographic
// order of the internal-count sequence. Throws kTooLarge for n > 10.
std::vector<TreeShape> enumerate_shapes(std::size_t n, std::int64_t h_max);

struct OracleResult {
  Rational decode;
  TreeShape shape;
  Count length = 0;
};

// Minimum decode time over enumerated shapes within the budget; ties go to
// the shorter code. Throws kTooLarge, kInfeasible.
OracleResult brute_force_optimal(const FrequencyTable& table, const BlockingScheme& scheme,
                                 Count budget, std::int64_t h_max);

}  // namespace dpfx::oracle
