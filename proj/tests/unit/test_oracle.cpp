#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>

#include "dpfx/error.hpp"
#include "dpfx/oracle.hpp"
#include "fixtures.hpp"

using namespace dpfx;

namespace {

// Independent enumeration: every sorted leaf-depth multiset of a full binary
// tree with n leaves, grown by splitting one deepest-level leaf at a time.
// Each multiset is turned into internal counts from node counts per depth.
std::set<std::vector<std::int64_t>> profiles_by_trees(int n) {
  std::set<std::vector<int>> seen;
  std::function<void(std::vector<int>)> grow = [&](std::vector<int> depths) {
    std::sort(depths.begin(), depths.end());
    if (!seen.insert(depths).second) return;
    if (static_cast<int>(depths.size()) == n) return;
    for (std::size_t k = 0; k < depths.size(); ++k) {
      if (k > 0 && depths[k] == depths[k - 1]) continue;
      auto next = depths;
      int d = next[k];
      next.erase(next.begin() + static_cast<long>(k));
      next.push_back(d + 1);
      next.push_back(d + 1);
      grow(next);
    }
  };
  grow({0});
  std::set<std::vector<std::int64_t>> profiles;
  for (const auto& depths : seen) {
    if (static_cast<int>(depths.size()) != n) continue;
    const int height = depths.back();
    std::vector<std::int64_t> internal_at(static_cast<std::size_t>(height) + 1, 0);
    std::int64_t nodes = 1;
    for (int d = 0; d <= height; ++d) {
      auto leaves = std::count(depths.begin(), depths.end(), d);
      internal_at[static_cast<std::size_t>(d)] = nodes - leaves;
      nodes = 2 * (nodes - leaves);
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(height) + 1, 0);
    for (int l = height; l >= 0; --l) {
      counts[static_cast<std::size_t>(l)] =
          internal_at[static_cast<std::size_t>(l)] + (l < height ? counts[static_cast<std::size_t>(l) + 1] : 0);
    }
    profiles.insert(counts);
  }
  return profiles;
}

}  // namespace

TEST_CASE("small enumerations") {
  CHECK(oracle::enumerate_shapes(2, 5) == std::vector<TreeShape>{TreeShape{{1, 0}}});
  CHECK(oracle::enumerate_shapes(3, 5) == std::vector<TreeShape>{TreeShape{{2, 1, 0}}});
  auto four = oracle::enumerate_shapes(4, 5);
  CHECK(four.size() == 2);
  CHECK(std::find(four.begin(), four.end(), TreeShape{{3, 2, 0}}) != four.end());
  CHECK(std::find(four.begin(), four.end(), TreeShape{{3, 2, 1, 0}}) != four.end());
  CHECK(oracle::enumerate_shapes(4, 2) == std::vector<TreeShape>{TreeShape{{3, 2, 0}}});
}

TEST_CASE("shape counts match full binary tree profiles") {
  for (int n = 2; n <= 9; ++n) {
    auto shapes = oracle::enumerate_shapes(static_cast<std::size_t>(n), n);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& s : shapes) {
      CHECK(validate_shape(s, static_cast<std::size_t>(n)));
      got.insert(s.counts);
    }
    CHECK(got.size() == shapes.size());
    CHECK(got == profiles_by_trees(n));
  }
  const std::vector<std::size_t> known{1, 1, 2, 3, 5, 9, 16, 28, 50};
  for (std::size_t n = 2; n <= 10; ++n) {
    CHECK(oracle::enumerate_shapes(n, 20).size() == known[n - 2]);
  }
}

TEST_CASE("guard and infeasibility") {
  try {
    oracle::enumerate_shapes(11, 20);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
  auto table = fixtures::six_symbol_table();
  try {
    oracle::brute_force_optimal(table, fixtures::two_block_scheme(5), 86, 5);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
}

TEST_CASE("worked example optimum") {
  auto table = fixtures::six_symbol_table();
  auto best = oracle::brute_force_optimal(table, fixtures::two_block_scheme(5), 100, 5);
  CHECK(best.decode <= Rational(76));
  CHECK(best.length <= 100);
  // Single block: every tree costs the same.
  BlockingScheme flat({{8, Rational(3)}}, false);
  auto any = oracle::brute_force_optimal(table, flat, 1000, 5);
  CHECK(any.decode == Rational(3 * 46));
}
