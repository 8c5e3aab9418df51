#pragma once

#include <cstdint>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx {

// H(i): minimum codelength over forests with i internal nodes, with the
// chosen i_{l+1} for each i so the optimal shape can be walked back.
struct HuffmanDpTable {
  std::vector<Count> cost;
  std::vector<std::int64_t> parent;
};

struct HuffmanResult {
  Count codelength = 0;
  TreeShape shape;
  HuffmanDpTable table;
};

// O(n^2) level-sum DP: H(i) = min_{max(0,2i-n) <= j < i} H(j) + P_{2i-j}.
// Among equal minimizers the largest j wins (shallower trees).
HuffmanResult huffman_dp(const FrequencyTable& table);

// Two-smallest merge; used as an independent check of huffman_dp.
Count classic_huffman(const FrequencyTable& table);

}  // namespace dpfx
