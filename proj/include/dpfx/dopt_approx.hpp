#pragma once

#include <cstdint>

#include "dpfx/dopt_exact.hpp"
#include "dpfx/model.hpp"

namespace dpfx {

// Length axis of the rounded DP: values b * lambda for b in [0, max_index].
struct RoundingGrid {
  std::int64_t lambda = 0;  // floor(eps * budget / (2h)); 0 means no rounding is possible
  std::int64_t max_index = 0;
  Rational epsilon;
  std::int64_t height = 0;
};

RoundingGrid make_rounding_grid(Count budget, const Rational& epsilon, std::int64_t height);

// ceil(x / lambda) * lambda; identity when lambda is 0.
std::int64_t round_up(std::int64_t x, const RoundingGrid& grid);

struct ApproxSolution {
  Solution solution;
  RoundingGrid grid;
  bool exact_fallback = false;  // lambda was 0 and the exact DP ran instead
};

// Codelength <= (1+eps) * budget and decode time <= the exact optimum for
// the same height bound. Lengths are rounded up to multiples of lambda, one
// lambda of slack per level, and the answer is read at r(budget) + h*lambda.
// Throws kInvalidArgument unless 0 < eps <= 1, plus the solve_exact errors.
ApproxSolution solve_pseudo_approx(const FrequencyTable& table, const BlockingScheme& scheme,
                                   Count budget, const Rational& epsilon,
                                   const DpOptions& options = {});

// 2k * ceil(1/delta) * ceil(log2 n), never below ceil(log2 n).
std::int64_t height_bound(std::int64_t n, std::int64_t k, const Rational& delta);

// The rounded DP restricted to height_bound(n, k(scheme), delta) and run on
// budget floor((1+delta) * budget): codelength <= (1+eps)(1+delta) * budget
// and decode time <= (1+delta) * DOPT(budget).
ApproxSolution solve_constant_hierarchy(const FrequencyTable& table, const BlockingScheme& scheme,
                                        Count budget, const Rational& epsilon,
                                        const Rational& delta, const DpOptions& options = {});

}  // namespace dpfx
