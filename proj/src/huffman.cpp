#include "dpfx/huffman.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace dpfx {

HuffmanResult huffman_dp(const FrequencyTable& table) {
  const auto n = static_cast<std::int64_t>(table.size());
  const auto sums = prefix_sums(table);
  HuffmanResult result;
  result.table.cost.assign(static_cast<std::size_t>(n), 0);
  result.table.parent.assign(static_cast<std::size_t>(n), 0);
  if (n == 1) {
    result.codelength = sums[1];
    result.shape.counts = {0};
    return result;
  }
  auto& cost = result.table.cost;
  auto& parent = result.table.parent;
  for (std::int64_t i = 1; i < n; ++i) {
    Count best = std::numeric_limits<Count>::max();
    for (std::int64_t j = std::max<std::int64_t>(0, 2 * i - n); j < i; ++j) {
      Count candidate = cost[static_cast<std::size_t>(j)] + sums[static_cast<std::size_t>(2 * i - j)];
      if (candidate <= best) {
        best = candidate;
        parent[static_cast<std::size_t>(i)] = j;
      }
    }
    cost[static_cast<std::size_t>(i)] = best;
  }
  result.codelength = cost[static_cast<std::size_t>(n - 1)];
  for (std::int64_t i = n - 1;; i = parent[static_cast<std::size_t>(i)]) {
    result.shape.counts.push_back(i);
    if (i == 0) break;
  }
  return result;
}

Count classic_huffman(const FrequencyTable& table) {
  if (table.size() == 1) return table.total();
  std::priority_queue<Count, std::vector<Count>, std::greater<>> heap(
      table.freqs().begin(), table.freqs().end());
  Count total = 0;
  while (heap.size() > 1) {
    Count a = heap.top();
    heap.pop();
    Count b = heap.top();
    heap.pop();
    total += a + b;
    heap.push(a + b);
  }
  return total;
}

}  // namespace dpfx
