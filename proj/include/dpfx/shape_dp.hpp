#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx {

// Level costs as integers: qhat[l] * scale is exact for every level l.
struct ScaledProfile {
  std::vector<std::int64_t> qhat;  // index = level, qhat[0] unused
  std::int64_t scale = 1;
};

ScaledProfile scale_profile(const LevelCostProfile& profile);

struct ShapeDpParams {
  std::vector<Count> prefix_sums;  // P_0..P_n over ascending frequencies
  ScaledProfile profile;           // covers levels 1..height
  std::int64_t height = 0;
  // Length axis: index b stands for the length value b * lambda and a level
  // contributing P_c consumes ceil(P_c / lambda) steps. lambda = 1 is exact.
  std::int64_t lambda = 1;
  std::int64_t max_index = 0;
  bool keep_all_levels = false;
  std::uint64_t work_limit = std::numeric_limits<std::uint64_t>::max();
};

// Minimum decode time over tree shapes of height <= height, as a table
// D(l, i, g, b): forests rooted at level l with i internal nodes, whose next
// internal count j = i_{l+1} is at least g, within length index b.
//
//   D(l, i, g, b) = min(D(l, i, g+1, b),
//                       qhat_{l+1} * P_{2i-g} + D(l+1, g, max(0, 3g-2i), b - u(2i-g)))
//
// g encodes c_{l+1} <= c_l for the leaf counts c_l = 2i_l - i_{l+1}, so every
// path through the table is a real prefix tree. Ties keep the larger j.
// Values roll over two levels unless keep_all_levels is set; the choice of j
// is kept as one bit per cell for backtracking.
class ShapeDp {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

  // Runs the DP. Throws kWorkLimitExceeded when height * cells-per-level
  // exceeds params.work_limit and kInvalidArgument on overflow-prone input.
  explicit ShapeDp(ShapeDpParams params);

  std::int64_t leaves() const { return n_; }
  std::int64_t height() const { return params_.height; }
  std::int64_t max_index() const { return params_.max_index; }
  std::int64_t lambda() const { return params_.lambda; }
  std::int64_t units(std::int64_t chars) const { return units_[static_cast<std::size_t>(chars)]; }

  // Scaled minimum decode time of a whole tree within length index b;
  // kInfinity when no tree fits.
  std::int64_t root(std::int64_t b) const;
  // Smallest b' <= b with root(b') == root(b).
  std::int64_t tightest_index(std::int64_t b) const;
  TreeShape backtrack(std::int64_t b) const;

  // Full table access; requires keep_all_levels. i >= 1 and 0 <= g < i;
  // level == height yields kInfinity.
  std::int64_t value(std::int64_t level, std::int64_t i, std::int64_t g, std::int64_t b) const;

  std::uint64_t cells_per_level() const { return cells_per_level_; }

 private:
  std::size_t row_offset(std::int64_t i, std::int64_t g) const;
  bool chosen(std::int64_t level, std::int64_t i, std::int64_t g, std::int64_t b) const;

  ShapeDpParams params_;
  std::int64_t n_ = 0;
  std::int64_t row_length_ = 0;
  std::uint64_t cells_per_level_ = 0;
  std::vector<std::int64_t> units_;
  // levels_[l] holds level l when keep_all_levels, otherwise only level 0.
  std::vector<std::vector<std::int64_t>> levels_;
  std::vector<std::uint64_t> choice_bits_;
};

}  // namespace dpfx
