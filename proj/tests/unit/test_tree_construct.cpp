#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "dpfx/error.hpp"
#include "dpfx/oracle.hpp"
#include "dpfx/tree.hpp"
#include "fixtures.hpp"

using namespace dpfx;

namespace {

// Kraft sum scaled by 2^64 via long double; exact for the depths used here.
long double kraft(const PrefixCode& code) {
  long double sum = 0;
  for (const auto& e : code.entries()) sum += std::ldexp(1.0L, -e.length);
  return sum;
}

}  // namespace

TEST_CASE("worked example depths") {
  auto table = fixtures::six_symbol_table();
  auto restructured = build_tree_from_shape(table, TreeShape{{5, 4, 2, 1, 0}});
  CHECK(depth_vector(restructured) == std::vector<int>{2, 2, 2, 3, 4, 4});
  auto skewed = build_tree_from_shape(table, TreeShape{{5, 4, 3, 2, 1, 0}});
  CHECK(depth_vector(skewed) == std::vector<int>{1, 2, 3, 4, 5, 5});
}

TEST_CASE("two and one symbols") {
  std::vector<SymbolCount> pair{{0, 3}, {1, 4}};
  auto code = build_tree_from_shape(FrequencyTable::from_counts(pair), TreeShape{{1, 0}});
  CHECK(depth_vector(code) == std::vector<int>{1, 1});
  // Higher frequency gets the smaller codeword.
  CHECK(code.find(1)->bits == 0);
  CHECK(code.find(0)->bits == 1);

  std::vector<SymbolCount> one{{9, 4}};
  auto single = build_tree_from_shape(FrequencyTable::from_counts(one), TreeShape{{0}});
  CHECK(depth_vector(single) == std::vector<int>{1});
  CHECK(single.find(9)->bits == 0);
}

TEST_CASE("invalid shape is rejected") {
  auto table = fixtures::six_symbol_table();
  try {
    build_tree_from_shape(table, TreeShape{{5, 1, 0}});
    FAIL("expected InvalidShape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidShape);
  }
}

TEST_CASE("every enumerated shape builds a canonical complete code") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 2; n <= 9; ++n) {
    auto table = fixtures::random_table(rng, n, 50);
    auto scheme = fixtures::random_scheme(rng, 3, true);
    for (const auto& shape : oracle::enumerate_shapes(n, static_cast<std::int64_t>(n))) {
      auto code = build_tree_from_shape(table, shape);
      REQUIRE(kraft(code) == 1.0L);
      CHECK(shape_from_lengths(depth_vector(code)) == shape);
      CHECK(code_length(table, code) == len_from_shape(table, shape));
      CHECK(decode_time(table, code, scheme) == decode_time_from_shape(table, shape, scheme));

      auto canonical = code.canonical_entries();
      for (std::size_t k = 1; k < canonical.size(); ++k) {
        const auto& a = canonical[k - 1];
        const auto& b = canonical[k];
        // (code + 1) << (length delta): the next codeword in canonical order.
        CHECK(((a.bits + 1) << (b.length - a.length)) == b.bits);
      }

      // Leaves strictly below level l equal 2*i_l - i_{l+1}.
      const auto depths = depth_vector(code);
      for (std::size_t l = 0; l + 1 < shape.counts.size(); ++l) {
        const auto below = std::count_if(depths.begin(), depths.end(),
                                         [&](int d) { return d > static_cast<int>(l); });
        CHECK(below == shape.chars_below(l));
      }

      // More frequent symbols are never deeper.
      for (const auto& x : table.original()) {
        for (const auto& y : table.original()) {
          if (x.count > y.count) CHECK(code.find(x.symbol)->length <= code.find(y.symbol)->length);
        }
      }
    }
  }
}

TEST_CASE("shape_from_lengths rejects incomplete codes") {
  std::vector<int> incomplete{1, 2};
  CHECK_THROWS_AS(shape_from_lengths(incomplete), Error);
  std::vector<int> lone{1};
  CHECK(shape_from_lengths(lone) == TreeShape{{0}});
}
