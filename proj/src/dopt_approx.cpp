#include "dpfx/dopt_approx.hpp"

#include <algorithm>

#include "dpfx/error.hpp"
#include "dpfx/shape_dp.hpp"
#include "solver_support.hpp"

namespace dpfx {

RoundingGrid make_rounding_grid(Count budget, const Rational& epsilon, std::int64_t height) {
  if (height < 1) throw Error(ErrorCode::kInvalidArgument, "grid height must be >= 1");
  if (epsilon <= 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  RoundingGrid grid;
  grid.epsilon = epsilon;
  grid.height = height;
  grid.lambda = floor_of(epsilon * budget / (2 * height));
  std::int64_t nominal_bound = ceil_of(Rational(2 * height) / epsilon) + height;
  if (grid.lambda > 0) {
    grid.max_index = std::max(nominal_bound, (budget + grid.lambda - 1) / grid.lambda + height);
  } else {
    grid.max_index = nominal_bound;
  }
  return grid;
}

std::int64_t round_up(std::int64_t x, const RoundingGrid& grid) {
  if (grid.lambda == 0) return x;
  return (x + grid.lambda - 1) / grid.lambda * grid.lambda;
}

ApproxSolution solve_pseudo_approx(const FrequencyTable& table, const BlockingScheme& scheme,
                                   Count budget, const Rational& epsilon,
                                   const DpOptions& options) {
  if (epsilon <= 0 || epsilon > 1) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1]");
  }
  detail::require_budget(table, budget);
  const std::size_t n = table.size();
  ApproxSolution result;
  if (n == 1) {
    result.grid = make_rounding_grid(budget, epsilon, 1);
    result.solution = solve_exact(table, scheme, budget, options);
    result.exact_fallback = true;
    return result;
  }
  const std::int64_t height = detail::effective_height(n, scheme, options.height);
  result.grid = make_rounding_grid(budget, epsilon, height);
  if (result.grid.lambda == 0) {
    DpOptions exact = options;
    exact.height = height;
    result.solution = solve_exact(table, scheme, budget, exact);
    result.exact_fallback = true;
    return result;
  }

  const std::int64_t lambda = result.grid.lambda;
  const std::int64_t answer = (budget + lambda - 1) / lambda + height;
  ShapeDpParams params;
  params.prefix_sums = prefix_sums(table);
  params.profile = scale_profile(level_cost_profile(scheme, height));
  params.height = height;
  params.lambda = lambda;
  params.max_index = answer;
  params.work_limit = options.work_limit;
  ShapeDp dp(std::move(params));
  if (dp.root(answer) >= ShapeDp::kInfinity) {
    throw Error(ErrorCode::kInfeasible, "no tree of height <= " + std::to_string(height) +
                                            " fits the rounded budget");
  }
  TreeShape shape = dp.backtrack(dp.tightest_index(answer));
  result.solution = {make_report(table, shape, scheme, budget), shape};
  return result;
}

std::int64_t height_bound(std::int64_t n, std::int64_t k, const Rational& delta) {
  if (n < 2 || k < 1 || delta <= 0 || delta > 1) {
    throw Error(ErrorCode::kInvalidArgument, "height bound needs n >= 2, k >= 1, 0 < delta <= 1");
  }
  const std::int64_t log_n = ceil_log2(static_cast<std::uint64_t>(n));
  return std::max(log_n, 2 * k * ceil_of(Rational(1) / delta) * log_n);
}

ApproxSolution solve_constant_hierarchy(const FrequencyTable& table, const BlockingScheme& scheme,
                                        Count budget, const Rational& epsilon,
                                        const Rational& delta, const DpOptions& options) {
  if (delta <= 0 || delta > 1) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1]");
  detail::require_budget(table, budget);
  const std::size_t n = table.size();
  DpOptions bounded = options;
  if (n >= 2) {
    const auto k = static_cast<std::int64_t>(hierarchy_count(scheme));
    std::int64_t bound = height_bound(static_cast<std::int64_t>(n), k, delta);
    if (options.height) bound = std::min(bound, *options.height);
    bounded.height = std::min<std::int64_t>(bound, static_cast<std::int64_t>(n) - 1);
  }
  const Count relaxed = floor_of((1 + delta) * budget);
  ApproxSolution result = solve_pseudo_approx(table, scheme, relaxed, epsilon, bounded);
  result.solution.report.budget = budget;
  return result;
}

}  // namespace dpfx
