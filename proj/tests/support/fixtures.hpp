#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpfx/model.hpp"

namespace fixtures {

// Ascending frequencies {1,1,4,6,9,25} as symbols 0..5 in that order.
inline dpfx::FrequencyTable six_symbol_table() {
  std::vector<dpfx::SymbolCount> counts{{0, 25}, {1, 9}, {2, 6}, {3, 4}, {4, 1}, {5, 1}};
  return dpfx::FrequencyTable::from_counts(counts);
}

inline dpfx::BlockingScheme two_block_scheme(std::int64_t q) {
  return dpfx::BlockingScheme({{2, dpfx::Rational(1)}, {3, dpfx::Rational(q)}}, false);
}

inline dpfx::FrequencyTable random_table(std::mt19937_64& rng, std::size_t n, dpfx::Count max_freq) {
  std::uniform_int_distribution<dpfx::Count> freq(1, max_freq);
  std::vector<dpfx::SymbolCount> counts;
  for (std::size_t s = 0; s < n; ++s) counts.push_back({static_cast<dpfx::Symbol>(s), freq(rng)});
  return dpfx::FrequencyTable::from_counts(counts);
}

// Up to max_blocks blocks of width 1..3 and integer or half-integer cost.
inline dpfx::BlockingScheme random_scheme(std::mt19937_64& rng, std::size_t max_blocks, bool extend) {
  std::uniform_int_distribution<std::size_t> count(1, max_blocks);
  std::uniform_int_distribution<std::int64_t> width(1, 3);
  std::uniform_int_distribution<std::int64_t> cost(1, 20);
  std::uniform_int_distribution<std::int64_t> denom(1, 2);
  std::vector<dpfx::Block> blocks;
  const std::size_t m = count(rng);
  for (std::size_t k = 0; k < m; ++k) blocks.push_back({width(rng), dpfx::Rational(cost(rng), denom(rng))});
  return dpfx::BlockingScheme(std::move(blocks), extend);
}

}  // namespace fixtures
