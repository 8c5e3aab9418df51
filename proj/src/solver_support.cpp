#include "solver_support.hpp"

#include <algorithm>

#include "dpfx/error.hpp"
#include "dpfx/huffman.hpp"

namespace dpfx::detail {

std::int64_t effective_height(std::size_t n, const BlockingScheme& scheme,
                              std::optional<std::int64_t> requested) {
  const auto leaves = static_cast<std::int64_t>(n);
  const std::int64_t minimum = ceil_log2(n);
  std::int64_t height = requested.value_or(std::max<std::int64_t>(leaves - 1, 1));
  if (height < std::max<std::int64_t>(minimum, 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "height " + std::to_string(height) + " is below ceil(log2 n) = " +
                    std::to_string(minimum));
  }
  height = std::min(height, std::max<std::int64_t>(leaves - 1, 1));
  if (!scheme.extend()) {
    if (scheme.total_width() < minimum) {
      throw Error(ErrorCode::kSchemeTooShort,
                  "scheme addresses " + std::to_string(scheme.total_width()) +
                      " bits but " + std::to_string(n) + " symbols need " +
                      std::to_string(minimum));
    }
    height = std::min(height, scheme.total_width());
  }
  return height;
}

Count require_budget(const FrequencyTable& table, Count budget) {
  Count optimum = huffman_dp(table).codelength;
  if (budget < optimum) {
    throw Error(ErrorCode::kInfeasible,
                "budget " + std::to_string(budget) + " is below the Huffman codelength " +
                    std::to_string(optimum));
  }
  return optimum;
}

}  // namespace dpfx::detail
