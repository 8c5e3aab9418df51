#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx {

enum class SlotKind : std::uint8_t { kInvalid, kDecoded, kDescend };

struct TableSlot {
  SlotKind kind = SlotKind::kInvalid;
  std::uint8_t bits_consumed = 0;  // kDecoded: codeword bits that fall in this table
  Symbol symbol = 0;
  std::uint32_t child = 0;         // kDescend: index into TableSet::tables()
};

// One block of the chain: indexed by the next `width` input bits, MSB first.
struct LookupTable {
  std::int64_t width = 0;
  Rational cost;
  std::size_t block_level = 0;
  std::vector<TableSlot> slots;
};

inline constexpr std::int64_t kMaxTableWidth = 24;

class TableSet {
 public:
  const std::vector<LookupTable>& tables() const { return tables_; }
  const LookupTable& root() const { return tables_.front(); }
  // Canonical (symbol, length) list of the compiled code.
  const std::vector<SymbolLength>& code_lengths() const { return code_lengths_; }
  const BlockingScheme& scheme() const { return scheme_; }

 private:
  friend TableSet compile_tables(const PrefixCode& code, const BlockingScheme& scheme);
  explicit TableSet(BlockingScheme scheme) : scheme_(std::move(scheme)) {}

  std::vector<LookupTable> tables_;
  std::vector<SymbolLength> code_lengths_;
  BlockingScheme scheme_;
};

// Root table for block 1 plus one table per internal node that sits on a
// block boundary. A codeword with r < width bits left fills 2^(width-r)
// slots. Throws kSchemeTooShort when the code is deeper than the scheme
// addresses and kInvalidArgument for blocks wider than kMaxTableWidth.
TableSet compile_tables(const PrefixCode& code, const BlockingScheme& scheme);

// Wire format, all integers big-endian:
//   "DPFX" | 0x01 | symbol_count u64 | alphabet_size u32 |
//   alphabet_size x (symbol u16, length u8) in canonical order |
//   payload_bits u64 | payload, MSB first, zero padded to a byte.
struct EncodedContainer {
  std::uint64_t symbol_count = 0;
  std::vector<SymbolLength> code;  // canonical order
  std::uint64_t payload_bits = 0;
  std::vector<std::uint8_t> payload;
};

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'D', 'P', 'F', 'X'};
inline constexpr std::uint8_t kContainerVersion = 0x01;

std::vector<std::uint8_t> serialize(const EncodedContainer& container);
// Throws kCorruptContainer.
EncodedContainer parse_container(std::span<const std::uint8_t> bytes);
// The canonical code a container carries.
PrefixCode container_code(const EncodedContainer& container);

// Throws kUnknownSymbol.
EncodedContainer encode_stream(std::span<const Symbol> symbols, const PrefixCode& code);

// Table visits per block level (index 0 is block level 1).
struct AccessMeter {
  std::vector<std::uint64_t> accesses;
};

struct DecodeResult {
  std::vector<Symbol> symbols;
  AccessMeter meter;
};

// One symbol per chain of table lookups. Throws kTableMismatch when the
// tables were compiled from a different code and kCorruptContainer on
// malformed payloads.
DecodeResult decode_stream(const EncodedContainer& container, const TableSet& tables);

// Sum over block levels of accesses x block cost.
Rational measured_cost(const AccessMeter& meter, const BlockingScheme& scheme);

}  // namespace dpfx
