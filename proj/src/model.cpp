#include "dpfx/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dpfx/error.hpp"

namespace dpfx {

FrequencyTable FrequencyTable::from_counts(std::span<const SymbolCount> counts) {
  FrequencyTable table;
  std::vector<bool> seen(65536, false);
  for (const auto& entry : counts) {
    if (entry.count < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative count for symbol " + std::to_string(entry.symbol));
    }
    if (seen[entry.symbol]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "symbol " + std::to_string(entry.symbol) + " listed twice");
    }
    seen[entry.symbol] = true;
    if (entry.count > 0) table.original_.push_back(entry);
  }
  if (table.original_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "frequency table has no non-zero symbols");
  }
  std::vector<std::size_t> order(table.original_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.original_[a].count < table.original_[b].count;
  });
  for (std::size_t index : order) {
    table.freqs_.push_back(table.original_[index].count);
    table.symbols_.push_back(table.original_[index].symbol);
    table.total_ += table.original_[index].count;
  }
  table.permutation_ = std::move(order);
  return table;
}

std::optional<Count> FrequencyTable::frequency_of(Symbol symbol) const {
  for (const auto& entry : original_) {
    if (entry.symbol == symbol) return entry.count;
  }
  return std::nullopt;
}

BlockingScheme::BlockingScheme(std::vector<Block> blocks, bool extend)
    : blocks_(std::move(blocks)), extend_(extend) {
  if (blocks_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "blocking scheme has no blocks");
  }
  for (const auto& block : blocks_) {
    if (block.width < 1) {
      throw Error(ErrorCode::kInvalidArgument, "block width must be >= 1");
    }
    if (block.cost <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "block cost must be > 0");
    }
    total_width_ += block.width;
  }
}

bool BlockingScheme::covers(std::int64_t depth) const {
  return extend_ || depth <= total_width_;
}

const Block& BlockingScheme::block(std::size_t index) const {
  if (index == 0) throw Error(ErrorCode::kInvalidArgument, "block index is 1-based");
  if (index <= blocks_.size()) return blocks_[index - 1];
  if (!extend_) {
    throw Error(ErrorCode::kSchemeTooShort,
                "scheme has only " + std::to_string(blocks_.size()) + " blocks");
  }
  return blocks_.back();
}

std::size_t BlockingScheme::blocks_to_cover(std::int64_t depth) const {
  if (!covers(depth)) {
    throw Error(ErrorCode::kSchemeTooShort,
                "depth " + std::to_string(depth) + " exceeds scheme width " +
                    std::to_string(total_width_));
  }
  std::size_t index = 0;
  std::int64_t width = 0;
  while (width < depth) {
    ++index;
    width += block(index).width;
  }
  return std::max<std::size_t>(index, 1);
}

std::string BlockingScheme::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k > 0) out += ',';
    out += "(" + std::to_string(blocks_[k].width) + "," + dpfx::to_string(blocks_[k].cost) + ")";
  }
  if (extend_) out += ",...";
  return out;
}

std::string to_string(const TreeShape& shape) {
  std::ostringstream out;
  out << '<';
  for (std::size_t k = 0; k < shape.counts.size(); ++k) {
    if (k > 0) out << ',';
    out << shape.counts[k];
  }
  out << '>';
  return out.str();
}

PrefixCode PrefixCode::from_canonical(std::span<const SymbolLength> canonical) {
  std::vector<Symbol> order;
  order.reserve(canonical.size());
  for (const auto& entry : canonical) order.push_back(entry.symbol);
  return from_canonical(canonical, order);
}

PrefixCode PrefixCode::from_canonical(std::span<const SymbolLength> canonical,
                                      std::span<const Symbol> original_order) {
  if (canonical.empty()) throw Error(ErrorCode::kInvalidArgument, "empty code");
  if (original_order.size() != canonical.size()) {
    throw Error(ErrorCode::kInvalidArgument, "original order size mismatch");
  }
  PrefixCode code;
  code.index_.assign(65536, -1);
  std::vector<CodeEntry> assigned;
  assigned.reserve(canonical.size());
  unsigned __int128 next = 0;
  int previous = canonical.front().length;
  for (std::size_t k = 0; k < canonical.size(); ++k) {
    int length = canonical[k].length;
    if (length < 1) throw Error(ErrorCode::kInvalidArgument, "code length must be >= 1");
    if (length > kMaxCodeLength) {
      throw Error(ErrorCode::kCodeTooLong,
                  "code length " + std::to_string(length) + " exceeds " +
                      std::to_string(kMaxCodeLength));
    }
    if (length < previous) {
      throw Error(ErrorCode::kInvalidArgument, "canonical lengths must be non-decreasing");
    }
    if (k > 0) next = (next + 1) << (length - previous);
    if (next >> length != 0) {
      throw Error(ErrorCode::kInvalidArgument, "code lengths over-subscribe the code space");
    }
    previous = length;
    Symbol symbol = canonical[k].symbol;
    if (code.index_[symbol] != -1) {
      throw Error(ErrorCode::kInvalidArgument, "symbol " + std::to_string(symbol) + " repeated");
    }
    code.index_[symbol] = static_cast<std::int32_t>(k);
    assigned.push_back({symbol, static_cast<std::uint64_t>(next), length});
    code.height_ = std::max(code.height_, length);
  }
  code.entries_.reserve(assigned.size());
  for (Symbol symbol : original_order) {
    std::int32_t at = code.index_[symbol];
    if (at < 0 || assigned[static_cast<std::size_t>(at)].length == 0) {
      throw Error(ErrorCode::kInvalidArgument, "original order is not a permutation");
    }
    code.entries_.push_back(assigned[static_cast<std::size_t>(at)]);
    assigned[static_cast<std::size_t>(at)].length = 0;
  }
  for (std::size_t k = 0; k < code.entries_.size(); ++k) {
    code.index_[code.entries_[k].symbol] = static_cast<std::int32_t>(k);
  }
  return code;
}

std::vector<CodeEntry> PrefixCode::canonical_entries() const {
  std::vector<CodeEntry> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const CodeEntry& a, const CodeEntry& b) {
    return a.length != b.length ? a.length < b.length : a.bits < b.bits;
  });
  return out;
}

const CodeEntry* PrefixCode::find(Symbol symbol) const {
  std::int32_t at = index_.empty() ? -1 : index_[symbol];
  return at < 0 ? nullptr : &entries_[static_cast<std::size_t>(at)];
}

std::vector<Count> prefix_sums(const FrequencyTable& table) {
  std::vector<Count> sums(table.size() + 1, 0);
  for (std::size_t k = 0; k < table.size(); ++k) sums[k + 1] = sums[k] + table.freqs()[k];
  return sums;
}

LevelCostProfile level_cost_profile(const BlockingScheme& scheme, std::int64_t height) {
  if (height < 1) throw Error(ErrorCode::kInvalidArgument, "profile height must be >= 1");
  if (!scheme.covers(height)) {
    throw Error(ErrorCode::kSchemeTooShort,
                "height " + std::to_string(height) + " exceeds scheme width " +
                    std::to_string(scheme.total_width()));
  }
  LevelCostProfile profile;
  profile.qhat.assign(static_cast<std::size_t>(height), Rational(0));
  std::int64_t top = 1;
  for (std::size_t index = 1; top <= height; ++index) {
    const Block& block = scheme.block(index);
    profile.qhat[static_cast<std::size_t>(top - 1)] = block.cost;
    top += block.width;
  }
  return profile;
}

BlockPosition block_of_depth(const BlockingScheme& scheme, std::int64_t depth) {
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 1");
  if (!scheme.covers(depth)) {
    throw Error(ErrorCode::kSchemeTooShort,
                "depth " + std::to_string(depth) + " exceeds scheme width " +
                    std::to_string(scheme.total_width()));
  }
  BlockPosition position{0, Rational(0)};
  std::int64_t width = 0;
  while (width < depth) {
    ++position.index;
    const Block& block = scheme.block(position.index);
    width += block.width;
    position.cumulative_cost += block.cost;
  }
  return position;
}

namespace {

const CodeEntry& require_entry(const PrefixCode& code, Symbol symbol) {
  const CodeEntry* entry = code.find(symbol);
  if (entry == nullptr) {
    throw Error(ErrorCode::kUnknownSymbol,
                "code has no entry for symbol " + std::to_string(symbol));
  }
  return *entry;
}

void require_valid(const TreeShape& shape, std::size_t n) {
  if (!validate_shape(shape, n)) {
    throw Error(ErrorCode::kInvalidShape,
                "shape " + to_string(shape) + " is not a prefix tree on " +
                    std::to_string(n) + " leaves");
  }
}

}  // namespace

Count code_length(const FrequencyTable& table, const PrefixCode& code) {
  Count total = 0;
  for (const auto& entry : table.original()) {
    total += entry.count * require_entry(code, entry.symbol).length;
  }
  return total;
}

Rational decode_time(const FrequencyTable& table, const PrefixCode& code,
                     const BlockingScheme& scheme) {
  Rational total(0);
  for (const auto& entry : table.original()) {
    int length = require_entry(code, entry.symbol).length;
    total += block_of_depth(scheme, length).cumulative_cost * entry.count;
  }
  return total;
}

Count len_from_shape(const FrequencyTable& table, const TreeShape& shape) {
  require_valid(shape, table.size());
  auto sums = prefix_sums(table);
  if (table.size() == 1) return sums[1];
  Count total = 0;
  for (std::size_t level = 0; level + 1 < shape.counts.size(); ++level) {
    total += sums[static_cast<std::size_t>(shape.chars_below(level))];
  }
  return total;
}

Rational decode_time_from_shape(const FrequencyTable& table, const TreeShape& shape,
                                const BlockingScheme& scheme) {
  require_valid(shape, table.size());
  auto sums = prefix_sums(table);
  auto profile = level_cost_profile(scheme, std::max<std::int64_t>(shape.height(), 1));
  if (table.size() == 1) return profile.at(1) * sums[1];
  Rational total(0);
  for (std::size_t level = 0; level + 1 < shape.counts.size(); ++level) {
    total += profile.at(level + 1) * sums[static_cast<std::size_t>(shape.chars_below(level))];
  }
  return total;
}

std::size_t hierarchy_count(const BlockingScheme& scheme) {
  std::size_t count = 1;
  const auto& blocks = scheme.blocks();
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    if (blocks[k].cost != blocks[k - 1].cost) ++count;
  }
  return count;
}

bool validate_shape(const TreeShape& shape, std::size_t n) {
  const auto& counts = shape.counts;
  if (n == 0 || counts.empty()) return false;
  if (counts.front() != static_cast<std::int64_t>(n) - 1 || counts.back() != 0) return false;
  std::int64_t leaves = static_cast<std::int64_t>(n);
  std::int64_t previous_below = leaves;
  for (std::size_t level = 0; level + 1 < counts.size(); ++level) {
    if (counts[level + 1] >= counts[level]) return false;
    std::int64_t below = 2 * counts[level] - counts[level + 1];
    if (below < 0 || below > leaves || below > previous_below) return false;
    previous_below = below;
  }
  return true;
}

std::vector<Count> per_block_counts(const TreeShape& shape, const BlockingScheme& scheme) {
  std::int64_t height = std::max<std::int64_t>(shape.height(), 1);
  std::vector<Count> counts(scheme.blocks_to_cover(height), 0);
  if (shape.height() == 0) {
    counts[0] = 1;
    return counts;
  }
  for (std::int64_t depth = 1; depth <= height; ++depth) {
    std::int64_t above = shape.chars_below(static_cast<std::size_t>(depth - 1));
    std::int64_t below =
        depth < height ? shape.chars_below(static_cast<std::size_t>(depth)) : 0;
    counts[block_of_depth(scheme, depth).index - 1] += above - below;
  }
  return counts;
}

CostReport make_report(const FrequencyTable& table, const TreeShape& shape,
                       const BlockingScheme& scheme, Count budget) {
  CostReport report;
  report.code_length = len_from_shape(table, shape);
  report.decode_time = decode_time_from_shape(table, shape, scheme);
  report.per_block_counts = per_block_counts(shape, scheme);
  report.budget = budget;
  return report;
}

std::int64_t ceil_log2(std::uint64_t n) {
  std::int64_t bits = 0;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace dpfx
