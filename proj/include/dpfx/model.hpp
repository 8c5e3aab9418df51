#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpfx/rational.hpp"

namespace dpfx {

using Symbol = std::uint16_t;
using Count = std::int64_t;

struct SymbolCount {
  Symbol symbol;
  Count count;
};

// Symbol frequencies sorted ascending. Ties keep the original input order,
// so every downstream structure is deterministic.
class FrequencyTable {
 public:
  // `counts` is in original symbol order. Zero counts are dropped.
  // Throws kEmptyInput when nothing remains, kInvalidArgument on negative
  // counts or repeated symbols.
  static FrequencyTable from_counts(std::span<const SymbolCount> counts);

  std::size_t size() const { return freqs_.size(); }
  Count total() const { return total_; }

  // Ascending frequencies and the matching symbols.
  std::span<const Count> freqs() const { return freqs_; }
  std::span<const Symbol> symbols() const { return symbols_; }
  // Sorted position -> position in original().
  std::span<const std::size_t> permutation() const { return permutation_; }
  // Surviving (non-zero) entries in original order.
  std::span<const SymbolCount> original() const { return original_; }

  std::optional<Count> frequency_of(Symbol symbol) const;

 private:
  std::vector<Count> freqs_;
  std::vector<Symbol> symbols_;
  std::vector<std::size_t> permutation_;
  std::vector<SymbolCount> original_;
  Count total_ = 0;
};

struct Block {
  std::int64_t width;
  Rational cost;

  friend bool operator==(const Block&, const Block&) = default;
};

// Chained lookup-table layout: block j is addressed with `width` bits and
// costs `cost` per access. With `extend` the last block repeats forever.
class BlockingScheme {
 public:
  // Throws kInvalidArgument on an empty list, width < 1 or cost <= 0.
  BlockingScheme(std::vector<Block> blocks, bool extend);

  const std::vector<Block>& blocks() const { return blocks_; }
  bool extend() const { return extend_; }
  // Width of the declared blocks only.
  std::int64_t total_width() const { return total_width_; }
  bool covers(std::int64_t depth) const;

  // 1-based; past the declared blocks the last one repeats when extend is
  // set, otherwise kSchemeTooShort.
  const Block& block(std::size_t index) const;
  // Number of blocks needed to address `depth` bits.
  std::size_t blocks_to_cover(std::int64_t depth) const;

  std::string to_string() const;

  friend bool operator==(const BlockingScheme&, const BlockingScheme&) = default;

 private:
  std::vector<Block> blocks_;
  bool extend_;
  std::int64_t total_width_ = 0;
};

// qhat indexed by tree level starting at 1: the block cost at the top level
// of each block, zero elsewhere.
struct LevelCostProfile {
  std::vector<Rational> qhat;

  std::size_t height() const { return qhat.size(); }
  const Rational& at(std::size_t level) const { return qhat.at(level - 1); }
};

// <i_0, ..., i_h>: i_l is the number of internal nodes at depth >= l.
struct TreeShape {
  std::vector<std::int64_t> counts;

  std::int64_t height() const {
    return static_cast<std::int64_t>(counts.size()) - 1;
  }
  // Leaves strictly below level l: 2*i_l - i_{l+1}.
  std::int64_t chars_below(std::size_t level) const {
    return 2 * counts[level] - counts[level + 1];
  }

  friend bool operator==(const TreeShape&, const TreeShape&) = default;
};

std::string to_string(const TreeShape& shape);

struct CodeEntry {
  Symbol symbol;
  std::uint64_t bits;  // right-aligned, MSB is the first bit sent
  int length;

  friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

struct SymbolLength {
  Symbol symbol;
  int length;

  friend bool operator==(const SymbolLength&, const SymbolLength&) = default;
};

inline constexpr int kMaxCodeLength = 64;

class PrefixCode {
 public:
  // Assigns canonical codewords to entries given in canonical order
  // (non-decreasing length): codes at equal length are consecutive and each
  // length starts at (previous code + 1) << (length delta). The original
  // order is the input order. Throws kInvalidArgument on decreasing lengths,
  // length < 1, repeated symbols or an over-full (non prefix-free) set, and
  // kCodeTooLong past kMaxCodeLength.
  static PrefixCode from_canonical(std::span<const SymbolLength> canonical);

  // Same assignment, but entries keep `original_order` for reporting.
  static PrefixCode from_canonical(std::span<const SymbolLength> canonical,
                                   std::span<const Symbol> original_order);

  std::span<const CodeEntry> entries() const { return entries_; }
  // Entries sorted by (length, bits).
  std::vector<CodeEntry> canonical_entries() const;
  const CodeEntry* find(Symbol symbol) const;
  std::size_t size() const { return entries_.size(); }
  int height() const { return height_; }

  friend bool operator==(const PrefixCode&, const PrefixCode&) = default;

 private:
  std::vector<CodeEntry> entries_;
  std::vector<std::int32_t> index_;  // symbol -> entry, -1 when absent
  int height_ = 0;
};

struct CostReport {
  Count code_length = 0;
  Rational decode_time;
  std::vector<Count> per_block_counts;  // symbols decoded at block level 1, 2, ...
  Count budget = 0;
};

struct BlockPosition {
  std::size_t index;  // 1-based block level
  Rational cumulative_cost;

  friend bool operator==(const BlockPosition&, const BlockPosition&) = default;
};

// P_0 = 0, P_i = f_1 + ... + f_i over ascending frequencies.
std::vector<Count> prefix_sums(const FrequencyTable& table);

LevelCostProfile level_cost_profile(const BlockingScheme& scheme,
                                    std::int64_t height);

BlockPosition block_of_depth(const BlockingScheme& scheme, std::int64_t depth);

Count code_length(const FrequencyTable& table, const PrefixCode& code);
Rational decode_time(const FrequencyTable& table, const PrefixCode& code,
                     const BlockingScheme& scheme);

Count len_from_shape(const FrequencyTable& table, const TreeShape& shape);
Rational decode_time_from_shape(const FrequencyTable& table,
                                const TreeShape& shape,
                                const BlockingScheme& scheme);

std::size_t hierarchy_count(const BlockingScheme& scheme);

// i_0 = n-1, strictly decreasing to 0, and the leaf counts below each level
// c_l = 2*i_l - i_{l+1} satisfy 0 <= c_l <= n and c_{l+1} <= c_l (no level
// holds a negative number of leaves).
bool validate_shape(const TreeShape& shape, std::size_t n);

// Leaves per block level for the tree `shape` describes.
std::vector<Count> per_block_counts(const TreeShape& shape,
                                    const BlockingScheme& scheme);

CostReport make_report(const FrequencyTable& table, const TreeShape& shape,
                       const BlockingScheme& scheme, Count budget);

// ceil(log2 n), 0 for n <= 1.
std::int64_t ceil_log2(std::uint64_t n);

}  // namespace dpfx
