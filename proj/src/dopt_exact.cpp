#include "dpfx/dopt_exact.hpp"

#include <algorithm>
#include <numeric>

#include "dpfx/error.hpp"
#include "dpfx/shape_dp.hpp"
#include "solver_support.hpp"

namespace dpfx {

Solution solve_exact(const FrequencyTable& table, const BlockingScheme& scheme, Count budget,
                     const DpOptions& options) {
  detail::require_budget(table, budget);
  const std::size_t n = table.size();
  if (n == 1) {
    TreeShape shape{{0}};
    return {make_report(table, shape, scheme, budget), shape};
  }
  const std::int64_t height = detail::effective_height(n, scheme, options.height);
  auto sums = prefix_sums(table);
  const Count longest = sums.back() * height;

  ShapeDpParams params;
  params.profile = scale_profile(level_cost_profile(scheme, height));
  params.prefix_sums = std::move(sums);
  params.height = height;
  params.lambda = 1;
  params.max_index = std::min(budget, longest);
  params.work_limit = options.work_limit;
  ShapeDp dp(std::move(params));

  if (dp.root(dp.max_index()) >= ShapeDp::kInfinity) {
    throw Error(ErrorCode::kInfeasible, "no tree of height <= " + std::to_string(height) +
                                            " has codelength <= " + std::to_string(budget));
  }
  TreeShape shape = dp.backtrack(dp.tightest_index(dp.max_index()));
  return {make_report(table, shape, scheme, budget), shape};
}

std::vector<Block> effective_blocks(const BlockingScheme& scheme, std::size_t n) {
  const std::int64_t height = std::max<std::int64_t>(1, static_cast<std::int64_t>(n) - 1);
  std::vector<Block> blocks;
  std::int64_t width = 0;
  for (std::size_t index = 1; width < height; ++index) {
    if (!scheme.extend() && index > scheme.blocks().size()) break;
    blocks.push_back(scheme.block(index));
    width += blocks.back().width;
  }
  return blocks;
}

namespace {

struct Pricing {
  std::int64_t scale = 1;  // common denominator of the block costs
};

Pricing price_blocks(const std::vector<Block>& blocks) {
  Pricing pricing;
  for (const auto& block : blocks) pricing.scale = std::lcm(pricing.scale, block.cost.denominator());
  return pricing;
}

// Walks S_1 >= S_2 >= ... >= S_m: S_b symbols sit at block level >= b.
void enumerate_levels(const std::vector<Count>& sums, const std::vector<std::int64_t>& block_cost,
                      std::size_t level, std::int64_t limit, std::int64_t acc,
                      std::vector<std::int64_t>& out) {
  if (level == block_cost.size()) {
    out.push_back(acc);
    return;
  }
  for (std::int64_t s = 0; s <= limit; ++s) {
    enumerate_levels(sums, block_cost, level + 1, s,
                     acc + block_cost[level] * sums[static_cast<std::size_t>(s)], out);
  }
}

struct ParetoPoint {
  std::int64_t value;  // scaled decode time
  Count length;
  std::int32_t j;      // i_{l+1} chosen at this level
  std::int32_t child;  // index into the level-(l+1) list, -1 for the empty forest
};

using ParetoList = std::vector<ParetoPoint>;

void keep_frontier(ParetoList& points) {
  std::sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.length != b.length) return a.length < b.length;
    return a.j > b.j;
  });
  ParetoList frontier;
  for (const auto& point : points) {
    if (frontier.empty() || point.length < frontier.back().length) frontier.push_back(point);
  }
  points.swap(frontier);
}

}  // namespace

std::vector<Rational> enumerate_decode_values(const FrequencyTable& table,
                                              const BlockingScheme& scheme) {
  const auto blocks = effective_blocks(scheme, table.size());
  const auto pricing = price_blocks(blocks);
  std::vector<std::int64_t> block_cost;
  for (const auto& block : blocks) {
    block_cost.push_back(block.cost.numerator() * (pricing.scale / block.cost.denominator()));
  }
  std::vector<std::int64_t> scaled;
  enumerate_levels(prefix_sums(table), block_cost, 0, static_cast<std::int64_t>(table.size()), 0,
                   scaled);
  std::sort(scaled.begin(), scaled.end());
  scaled.erase(std::unique(scaled.begin(), scaled.end()), scaled.end());
  std::vector<Rational> values;
  values.reserve(scaled.size());
  for (std::int64_t v : scaled) values.emplace_back(v, pricing.scale);
  return values;
}

Solution solve_fixed_block_levels(const FrequencyTable& table, const BlockingScheme& scheme,
                                  Count budget, const DpOptions& options) {
  const std::size_t n = table.size();
  const auto blocks = effective_blocks(scheme, n);
  const std::size_t m = blocks.size();
  if (m > 3) {
    throw Error(ErrorCode::kWorkLimitExceeded,
                "fixed-level solve supports at most 3 block levels, scheme needs " +
                    std::to_string(m));
  }
  long double work = 1;
  for (std::size_t k = 0; k < m + 3; ++k) work *= static_cast<long double>(n);
  if (work > static_cast<long double>(options.work_limit)) {
    throw Error(ErrorCode::kWorkLimitExceeded,
                "n^(m+3) exceeds the work limit " + std::to_string(options.work_limit));
  }
  try {
    detail::require_budget(table, budget);
  } catch (const Error&) {
    throw Error(ErrorCode::kNoValidTree, "No Valid Tree: budget " + std::to_string(budget) +
                                             " is below every prefix tree's codelength");
  }
  if (n == 1) {
    TreeShape shape{{0}};
    return {make_report(table, shape, scheme, budget), shape};
  }

  const BlockingScheme fixed(blocks, false);
  std::int64_t height = std::min<std::int64_t>(static_cast<std::int64_t>(n) - 1, fixed.total_width());
  if (height < ceil_log2(n)) {
    throw Error(ErrorCode::kSchemeTooShort, "blocks address too few bits for " +
                                                std::to_string(n) + " symbols");
  }
  if (options.height) height = std::min(height, detail::effective_height(n, fixed, options.height));
  const auto profile = scale_profile(level_cost_profile(fixed, height));
  const auto sums = prefix_sums(table);
  const auto leaves = static_cast<std::int64_t>(n);

  auto state = [](std::int64_t i, std::int64_t g) {
    return static_cast<std::size_t>((i - 1) * i / 2 + g);
  };
  const std::size_t states = static_cast<std::size_t>((leaves - 1) * leaves / 2);
  std::vector<std::vector<ParetoList>> levels(static_cast<std::size_t>(height),
                                              std::vector<ParetoList>(states));
  const ParetoList empty_forest{{0, 0, -1, -1}};

  for (std::int64_t level = height - 1; level >= 0; --level) {
    auto& cur = levels[static_cast<std::size_t>(level)];
    const std::int64_t q = profile.qhat[static_cast<std::size_t>(level + 1)];
    for (std::int64_t i = 1; i <= leaves - 1 - level; ++i) {
      for (std::int64_t g = i - 1; g >= 0; --g) {
        ParetoList merged;
        if (g + 1 <= i - 1) merged = cur[state(i, g + 1)];
        const std::int64_t j = g;
        const std::int64_t chars = 2 * i - j;
        const ParetoList* child = nullptr;
        if (chars <= leaves) {
          if (j == 0) {
            child = &empty_forest;
          } else if (level + 1 < height) {
            child = &levels[static_cast<std::size_t>(level + 1)]
                           [state(j, std::max<std::int64_t>(0, 3 * j - 2 * i))];
          }
        }
        if (child != nullptr) {
          const Count p = sums[static_cast<std::size_t>(chars)];
          for (std::size_t k = 0; k < child->size(); ++k) {
            const auto& below = (*child)[k];
            if (below.length + p > budget) continue;
            merged.push_back({below.value + q * p, below.length + p, static_cast<std::int32_t>(j),
                              j == 0 ? -1 : static_cast<std::int32_t>(k)});
          }
        }
        keep_frontier(merged);
        cur[state(i, g)] = std::move(merged);
      }
    }
  }

  const std::int64_t g0 = std::max<std::int64_t>(0, leaves - 2);
  const ParetoList& roots = levels[0][state(leaves - 1, g0)];
  if (roots.empty()) {
    throw Error(ErrorCode::kNoValidTree, "No Valid Tree: no tree of height <= " +
                                             std::to_string(height) + " meets the budget");
  }
  TreeShape shape;
  std::int64_t i = leaves - 1;
  shape.counts.push_back(i);
  const ParetoPoint* point = &roots.front();
  for (std::int64_t level = 0; i > 0; ++level) {
    const std::int64_t j = point->j;
    const std::int64_t g = std::max<std::int64_t>(0, 3 * j - 2 * i);
    shape.counts.push_back(j);
    if (j > 0) {
      point = &levels[static_cast<std::size_t>(level + 1)][state(j, g)]
                     [static_cast<std::size_t>(point->child)];
    }
    i = j;
  }
  return {make_report(table, shape, scheme, budget), shape};
}

}  // namespace dpfx
