#include "dpfx/tree.hpp"

#include <algorithm>

#include "dpfx/error.hpp"

namespace dpfx {

PrefixCode build_tree_from_shape(const FrequencyTable& table, const TreeShape& shape) {
  const std::size_t n = table.size();
  if (!validate_shape(shape, n)) {
    throw Error(ErrorCode::kInvalidShape,
                "shape " + to_string(shape) + " is not a prefix tree on " +
                    std::to_string(n) + " leaves");
  }
  std::vector<SymbolLength> canonical;
  canonical.reserve(n);
  if (n == 1) {
    canonical.push_back({table.symbols()[0], 1});
  } else {
    // Most frequent first; equal counts keep input order.
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    const auto freqs = table.freqs();
    const auto position = table.permutation();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (freqs[a] != freqs[b]) return freqs[a] > freqs[b];
      return position[a] < position[b];
    });
    std::size_t next = 0;
    const auto height = static_cast<std::size_t>(shape.height());
    for (std::size_t depth = 1; depth <= height; ++depth) {
      std::int64_t above = shape.chars_below(depth - 1);
      std::int64_t below = depth < height ? shape.chars_below(depth) : 0;
      for (std::int64_t k = 0; k < above - below; ++k) {
        canonical.push_back({table.symbols()[order[next++]], static_cast<int>(depth)});
      }
    }
  }
  std::vector<Symbol> original;
  original.reserve(n);
  for (const auto& entry : table.original()) original.push_back(entry.symbol);
  return PrefixCode::from_canonical(canonical, original);
}

std::vector<int> depth_vector(const PrefixCode& code) {
  std::vector<int> depths;
  depths.reserve(code.size());
  for (const auto& entry : code.entries()) depths.push_back(entry.length);
  return depths;
}

TreeShape shape_from_lengths(std::span<const int> lengths) {
  if (lengths.empty()) throw Error(ErrorCode::kInvalidArgument, "no code lengths");
  if (lengths.size() == 1) {
    if (lengths[0] != 1) throw Error(ErrorCode::kInvalidArgument, "single symbol must have length 1");
    return TreeShape{{0}};
  }
  int height = *std::max_element(lengths.begin(), lengths.end());
  std::vector<std::int64_t> leaves(static_cast<std::size_t>(height) + 1, 0);
  for (int length : lengths) {
    if (length < 1) throw Error(ErrorCode::kInvalidArgument, "code length must be >= 1");
    ++leaves[static_cast<std::size_t>(length)];
  }
  // internal[d] = (leaves[d+1] + internal[d+1]) / 2, walking up from the bottom.
  std::vector<std::int64_t> internal(static_cast<std::size_t>(height) + 1, 0);
  for (int depth = height - 1; depth >= 0; --depth) {
    auto d = static_cast<std::size_t>(depth);
    std::int64_t nodes = leaves[d + 1] + internal[d + 1];
    if (nodes % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "lengths do not form a complete code");
    internal[d] = nodes / 2;
  }
  if (internal[0] != 1 || leaves[0] != 0) {
    throw Error(ErrorCode::kInvalidArgument, "lengths do not form a complete code");
  }
  TreeShape shape;
  shape.counts.assign(static_cast<std::size_t>(height) + 1, 0);
  // i_l counts internal nodes at depth >= l.
  std::int64_t running = 0;
  for (int depth = height; depth >= 0; --depth) {
    auto d = static_cast<std::size_t>(depth);
    running += internal[d];
    shape.counts[d] = running;
  }
  return shape;
}

}  // namespace dpfx
