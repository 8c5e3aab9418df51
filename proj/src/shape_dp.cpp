#include "dpfx/shape_dp.hpp"

#include <algorithm>
#include <numeric>

#include "dpfx/error.hpp"

namespace dpfx {

ScaledProfile scale_profile(const LevelCostProfile& profile) {
  ScaledProfile scaled;
  for (const auto& q : profile.qhat) {
    scaled.scale = std::lcm(scaled.scale, q.denominator());
  }
  scaled.qhat.assign(profile.height() + 1, 0);
  for (std::size_t level = 1; level <= profile.height(); ++level) {
    const Rational& q = profile.at(level);
    scaled.qhat[level] = q.numerator() * (scaled.scale / q.denominator());
  }
  return scaled;
}

ShapeDp::ShapeDp(ShapeDpParams params) : params_(std::move(params)) {
  n_ = static_cast<std::int64_t>(params_.prefix_sums.size()) - 1;
  const std::int64_t h = params_.height;
  if (n_ < 2) throw Error(ErrorCode::kInvalidArgument, "shape DP needs at least two symbols");
  if (h < 1) throw Error(ErrorCode::kInvalidArgument, "shape DP height must be >= 1");
  if (params_.lambda < 1) throw Error(ErrorCode::kInvalidArgument, "length step must be >= 1");
  if (params_.max_index < 0) throw Error(ErrorCode::kInvalidArgument, "negative length index");
  if (static_cast<std::int64_t>(params_.profile.qhat.size()) < h + 1) {
    throw Error(ErrorCode::kInvalidArgument, "cost profile shorter than DP height");
  }

  __int128 cost_sum = 0;
  for (std::int64_t level = 1; level <= h; ++level) cost_sum += params_.profile.qhat[static_cast<std::size_t>(level)];
  if (cost_sum * params_.prefix_sums.back() >= kInfinity) {
    throw Error(ErrorCode::kInvalidArgument, "decode times overflow 64-bit arithmetic");
  }

  row_length_ = params_.max_index + 1;
  const auto rows = static_cast<std::uint64_t>(n_ - 1) * static_cast<std::uint64_t>(n_) / 2;
  cells_per_level_ = rows * static_cast<std::uint64_t>(row_length_);
  if (cells_per_level_ / static_cast<std::uint64_t>(row_length_) != rows ||
      cells_per_level_ > params_.work_limit / static_cast<std::uint64_t>(h)) {
    throw Error(ErrorCode::kWorkLimitExceeded,
                "DP needs " + std::to_string(cells_per_level_) + " cells per level over " +
                    std::to_string(h) + " levels; work limit is " +
                    std::to_string(params_.work_limit));
  }

  units_.resize(params_.prefix_sums.size());
  for (std::size_t c = 0; c < units_.size(); ++c) {
    units_[c] = (params_.prefix_sums[c] + params_.lambda - 1) / params_.lambda;
  }

  const std::size_t cells = static_cast<std::size_t>(cells_per_level_);
  choice_bits_.assign((cells * static_cast<std::size_t>(h) + 63) / 64, 0);
  if (params_.keep_all_levels) levels_.resize(static_cast<std::size_t>(h));

  std::vector<std::int64_t> next;
  std::vector<std::int64_t> cur;
  const std::int64_t width = row_length_;
  for (std::int64_t level = h - 1; level >= 0; --level) {
    cur.assign(cells, kInfinity);
    const std::int64_t q = params_.profile.qhat[static_cast<std::size_t>(level + 1)];
    const std::size_t bit_base = static_cast<std::size_t>(level) * cells;
    // i_l <= n-1-l since i strictly decreases from n-1.
    const std::int64_t max_i = std::min(n_ - 1, n_ - 1 - level);
    for (std::int64_t i = 1; i <= max_i; ++i) {
      for (std::int64_t g = i - 1; g >= 0; --g) {
        std::int64_t* row = cur.data() + row_offset(i, g);
        const std::int64_t* prev = g + 1 <= i - 1 ? cur.data() + row_offset(i, g + 1) : nullptr;
        const std::int64_t j = g;
        const std::int64_t chars = 2 * i - j;
        const std::int64_t* child = nullptr;
        bool child_is_leafset = j == 0;
        if (chars <= n_ && !child_is_leafset && level + 1 < h) {
          child = next.data() + row_offset(j, std::max<std::int64_t>(0, 3 * j - 2 * i));
        }
        if (chars > n_ || (!child_is_leafset && child == nullptr)) {
          if (prev != nullptr) std::copy(prev, prev + width, row);
          continue;
        }
        const std::int64_t u = units_[static_cast<std::size_t>(chars)];
        const std::int64_t add = q * params_.prefix_sums[static_cast<std::size_t>(chars)];
        const std::size_t bit_row = bit_base + row_offset(i, g);
        for (std::int64_t b = 0; b < width; ++b) {
          std::int64_t best = prev != nullptr ? prev[b] : kInfinity;
          std::int64_t term = kInfinity;
          if (b >= u) {
            std::int64_t below = child_is_leafset ? 0 : child[b - u];
            if (below < kInfinity) term = below + add;
          }
          if (term < best) {
            row[b] = term;
            std::size_t bit = bit_row + static_cast<std::size_t>(b);
            choice_bits_[bit / 64] |= std::uint64_t{1} << (bit % 64);
          } else {
            row[b] = best;
          }
        }
      }
    }
    if (params_.keep_all_levels) {
      levels_[static_cast<std::size_t>(level)] = cur;
      next = levels_[static_cast<std::size_t>(level)];
    } else {
      next.swap(cur);
    }
  }
  if (!params_.keep_all_levels) {
    levels_.resize(1);
    levels_[0] = std::move(next);
  }
}

std::size_t ShapeDp::row_offset(std::int64_t i, std::int64_t g) const {
  auto index = static_cast<std::size_t>((i - 1) * i / 2 + g);
  return index * static_cast<std::size_t>(row_length_);
}

bool ShapeDp::chosen(std::int64_t level, std::int64_t i, std::int64_t g, std::int64_t b) const {
  std::size_t bit = static_cast<std::size_t>(level) * static_cast<std::size_t>(cells_per_level_) +
                    row_offset(i, g) + static_cast<std::size_t>(b);
  return (choice_bits_[bit / 64] >> (bit % 64)) & 1U;
}

std::int64_t ShapeDp::root(std::int64_t b) const {
  b = std::clamp<std::int64_t>(b, -1, params_.max_index);
  if (b < 0) return kInfinity;
  const std::int64_t g = std::max<std::int64_t>(0, n_ - 2);
  return levels_[0][row_offset(n_ - 1, g) + static_cast<std::size_t>(b)];
}

std::int64_t ShapeDp::tightest_index(std::int64_t b) const {
  b = std::min(b, params_.max_index);
  const std::int64_t target = root(b);
  for (std::int64_t k = 0; k < b; ++k) {
    if (root(k) == target) return k;
  }
  return b;
}

TreeShape ShapeDp::backtrack(std::int64_t b) const {
  b = std::min(b, params_.max_index);
  if (root(b) >= kInfinity) throw Error(ErrorCode::kInfeasible, "no tree fits the length budget");
  TreeShape shape;
  std::int64_t i = n_ - 1;
  std::int64_t g = std::max<std::int64_t>(0, n_ - 2);
  shape.counts.push_back(i);
  for (std::int64_t level = 0; i > 0; ++level) {
    std::int64_t j = g;
    while (j < i && !chosen(level, i, j, b)) ++j;
    if (j >= i) throw Error(ErrorCode::kInvalidArgument, "DP backtrack lost its path");
    b -= units_[static_cast<std::size_t>(2 * i - j)];
    g = std::max<std::int64_t>(0, 3 * j - 2 * i);
    i = j;
    shape.counts.push_back(i);
  }
  return shape;
}

std::int64_t ShapeDp::value(std::int64_t level, std::int64_t i, std::int64_t g, std::int64_t b) const {
  if (!params_.keep_all_levels) {
    throw Error(ErrorCode::kInvalidArgument, "DP levels were not kept");
  }
  if (i < 1 || g < 0 || g >= i || i >= n_ || b < 0 || b > params_.max_index || level < 0) {
    throw Error(ErrorCode::kInvalidArgument, "DP cell out of range");
  }
  if (level >= params_.height) return kInfinity;
  return levels_[static_cast<std::size_t>(level)][row_offset(i, g) + static_cast<std::size_t>(b)];
}

}  // namespace dpfx
