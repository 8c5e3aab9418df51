#pragma once

#include <cstdint>
#include <optional>

#include "dpfx/model.hpp"

namespace dpfx::detail {

// Validates a requested height and applies the scheme's width cap.
std::int64_t effective_height(std::size_t n, const BlockingScheme& scheme,
                              std::optional<std::int64_t> requested);

// Throws kInfeasible when budget is below the Huffman codelength.
Count require_budget(const FrequencyTable& table, Count budget);


}  // namespace dpfx::detail
