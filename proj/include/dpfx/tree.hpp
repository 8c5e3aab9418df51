#pragma once

#include <span>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx {

// Materializes the tree a valid shape describes. Level d holds
// c_{d-1} - c_d leaves; the highest frequencies take the shallowest leaves
// and, within a level, the numerically smallest codes. Throws kInvalidShape.
// A single symbol gets the 1-bit codeword 0.
PrefixCode build_tree_from_shape(const FrequencyTable& table, const TreeShape& shape);

// Codeword lengths in the code's original symbol order.
std::vector<int> depth_vector(const PrefixCode& code);

// Inverse of build_tree_from_shape on the level structure: recounts the
// internal nodes at depth >= l of the full binary tree with these leaf depths.
// Throws kInvalidArgument when the lengths do not form a complete code
// (a lone length of 1 is accepted as the single-symbol tree).
TreeShape shape_from_lengths(std::span<const int> lengths);

}  // namespace dpfx
