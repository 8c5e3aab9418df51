#include "dpfx/oracle.hpp"

#include "dpfx/error.hpp"

namespace dpfx::oracle {
namespace {

void extend_shape(std::int64_t n, std::int64_t h_max, std::int64_t chars_above,
                  std::vector<std::int64_t>& counts, std::vector<TreeShape>& out) {
  const std::int64_t i = counts.back();
  if (i == 0) {
    out.push_back(TreeShape{counts});
    return;
  }
  if (static_cast<std::int64_t>(counts.size()) > h_max) return;
  for (std::int64_t j = std::max<std::int64_t>(0, 2 * i - n); j < i; ++j) {
    const std::int64_t chars = 2 * i - j;
    if (chars > chars_above) continue;
    counts.push_back(j);
    extend_shape(n, h_max, chars, counts, out);
    counts.pop_back();
  }
}

void guard(std::size_t n) {
  if (n > kMaxOracleSymbols) {
    throw Error(ErrorCode::kTooLarge, "oracle enumerates at most " +
                                          std::to_string(kMaxOracleSymbols) + " symbols, got " +
                                          std::to_string(n));
  }
}

}  // namespace

std::vector<TreeShape> enumerate_shapes(std::size_t n, std::int64_t h_max) {
  guard(n);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "no symbols");
  std::vector<TreeShape> out;
  if (n == 1) {
    out.push_back(TreeShape{{0}});
    return out;
  }
  const auto leaves = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> counts{leaves - 1};
  extend_shape(leaves, h_max, leaves, counts, out);
  return out;
}

OracleResult brute_force_optimal(const FrequencyTable& table, const BlockingScheme& scheme,
                                 Count budget, std::int64_t h_max) {
  guard(table.size());
  bool found = false;
  OracleResult best;
  for (auto& shape : enumerate_shapes(table.size(), h_max)) {
    if (!scheme.covers(std::max<std::int64_t>(1, shape.height()))) continue;
    const Count length = len_from_shape(table, shape);
    if (length > budget) continue;
    const Rational decode = decode_time_from_shape(table, shape, scheme);
    if (!found || decode < best.decode || (decode == best.decode && length < best.length)) {
      best = {decode, std::move(shape), length};
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kInfeasible,
                "no tree of height <= " + std::to_string(h_max) + " meets budget " +
                    std::to_string(budget));
  }
  return best;
}

}  // namespace dpfx::oracle
