#include "dpfx/codec.hpp"

#include <algorithm>
#include <map>

#include "dpfx/error.hpp"

namespace dpfx {
namespace {

std::uint64_t low_bits(std::uint64_t value, std::int64_t count) {
  return count >= 64 ? value : value & ((std::uint64_t{1} << count) - 1);
}

struct PendingTable {
  std::size_t index;
  std::size_t level;
  std::int64_t start;  // codeword bits consumed before this table
  std::vector<CodeEntry> codes;
};

void put_be(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
  for (int k = bytes - 1; k >= 0; --k) out.push_back(static_cast<std::uint8_t>(value >> (8 * k)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t get_be(int count) {
    if (bytes_.size() - pos_ < static_cast<std::size_t>(count)) {
      throw Error(ErrorCode::kCorruptContainer, "container truncated at byte " + std::to_string(pos_));
    }
    std::uint64_t value = 0;
    for (int k = 0; k < count; ++k) value = (value << 8) | bytes_[pos_++];
    return value;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

class BitWriter {
 public:
  void put(std::uint64_t bits, int length) {
    for (int k = length - 1; k >= 0; --k) {
      if (count_ % 8 == 0) bytes_.push_back(0);
      if ((bits >> k) & 1U) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (count_ % 8));
      ++count_;
    }
  }
  std::uint64_t count() const { return count_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t count_ = 0;
};

// Next `width` bits at `pos`, MSB first; bits past the payload read as 0.
std::uint64_t peek_bits(std::span<const std::uint8_t> payload, std::uint64_t pos, std::int64_t width) {
  std::uint64_t window = 0;
  std::uint64_t first = pos / 8;
  int shift_in = static_cast<int>(pos % 8);
  // width <= 24 and shift_in <= 7 fit in four bytes.
  for (std::uint64_t k = 0; k < 4; ++k) {
    std::uint64_t at = first + k;
    window = (window << 8) | (at < payload.size() ? payload[at] : 0);
  }
  return (window >> (32 - shift_in - width)) & ((std::uint64_t{1} << width) - 1);
}

}  // namespace

TableSet compile_tables(const PrefixCode& code, const BlockingScheme& scheme) {
  if (!scheme.covers(code.height())) {
    throw Error(ErrorCode::kSchemeTooShort,
                "code height " + std::to_string(code.height()) + " exceeds scheme width " +
                    std::to_string(scheme.total_width()));
  }
  TableSet set(scheme);
  const auto canonical = code.canonical_entries();
  for (const auto& entry : canonical) set.code_lengths_.push_back({entry.symbol, entry.length});

  std::vector<PendingTable> pending;
  pending.push_back({0, 1, 0, canonical});
  set.tables_.emplace_back();
  while (!pending.empty()) {
    PendingTable job = std::move(pending.back());
    pending.pop_back();
    const Block& block = scheme.block(job.level);
    if (block.width > kMaxTableWidth) {
      throw Error(ErrorCode::kInvalidArgument,
                  "block width " + std::to_string(block.width) + " exceeds table limit " +
                      std::to_string(kMaxTableWidth));
    }
    const std::int64_t width = block.width;
    LookupTable table;
    table.width = width;
    table.cost = block.cost;
    table.block_level = job.level;
    table.slots.assign(std::size_t{1} << width, TableSlot{});

    std::map<std::uint64_t, std::vector<CodeEntry>> deeper;
    for (const auto& entry : job.codes) {
      const std::int64_t remaining = entry.length - job.start;
      if (remaining <= width) {
        const std::uint64_t base = low_bits(entry.bits, remaining) << (width - remaining);
        const std::uint64_t span = std::uint64_t{1} << (width - remaining);
        for (std::uint64_t k = 0; k < span; ++k) {
          auto& slot = table.slots[base + k];
          slot.kind = SlotKind::kDecoded;
          slot.bits_consumed = static_cast<std::uint8_t>(remaining);
          slot.symbol = entry.symbol;
        }
      } else {
        const std::uint64_t key = low_bits(entry.bits >> (remaining - width), width);
        deeper[key].push_back(entry);
      }
    }
    for (auto& [key, codes] : deeper) {
      const std::size_t child = set.tables_.size();
      set.tables_.emplace_back();
      auto& slot = table.slots[key];
      slot.kind = SlotKind::kDescend;
      slot.child = static_cast<std::uint32_t>(child);
      pending.push_back({child, job.level + 1, job.start + width, std::move(codes)});
    }
    set.tables_[job.index] = std::move(table);
  }
  return set;
}

std::vector<std::uint8_t> serialize(const EncodedContainer& container) {
  std::vector<std::uint8_t> out(kContainerMagic.begin(), kContainerMagic.end());
  out.push_back(kContainerVersion);
  put_be(out, container.symbol_count, 8);
  put_be(out, container.code.size(), 4);
  for (const auto& entry : container.code) {
    put_be(out, entry.symbol, 2);
    put_be(out, static_cast<std::uint64_t>(entry.length), 1);
  }
  put_be(out, container.payload_bits, 8);
  out.insert(out.end(), container.payload.begin(), container.payload.end());
  return out;
}

EncodedContainer parse_container(std::span<const std::uint8_t> bytes) {
  ByteReader reader(bytes);
  for (std::uint8_t expected : kContainerMagic) {
    if (reader.get_be(1) != expected) throw Error(ErrorCode::kCorruptContainer, "bad magic");
  }
  if (reader.get_be(1) != kContainerVersion) {
    throw Error(ErrorCode::kCorruptContainer, "unsupported container version");
  }
  EncodedContainer container;
  container.symbol_count = reader.get_be(8);
  const std::uint64_t alphabet = reader.get_be(4);
  if (alphabet > 65536 || alphabet * 3 > reader.remaining()) {
    throw Error(ErrorCode::kCorruptContainer, "alphabet size " + std::to_string(alphabet) + " is impossible");
  }
  int previous = 0;
  for (std::uint64_t k = 0; k < alphabet; ++k) {
    auto symbol = static_cast<Symbol>(reader.get_be(2));
    auto length = static_cast<int>(reader.get_be(1));
    if (length < 1 || length > kMaxCodeLength || length < previous) {
      throw Error(ErrorCode::kCorruptContainer, "code lengths are not canonical");
    }
    previous = length;
    container.code.push_back({symbol, length});
  }
  container.payload_bits = reader.get_be(8);
  const std::uint64_t payload_bytes = (container.payload_bits + 7) / 8;
  if (reader.remaining() != payload_bytes || container.payload_bits / 8 > reader.remaining()) {
    throw Error(ErrorCode::kCorruptContainer,
                "payload holds " + std::to_string(reader.remaining()) + " bytes, header says " +
                    std::to_string(payload_bytes));
  }
  auto rest = reader.rest();
  container.payload.assign(rest.begin(), rest.end());
  return container;
}

PrefixCode container_code(const EncodedContainer& container) {
  if (container.code.empty()) throw Error(ErrorCode::kCorruptContainer, "container has no code");
  try {
    return PrefixCode::from_canonical(container.code);
  } catch (const Error& error) {
    throw Error(ErrorCode::kCorruptContainer, std::string("container code: ") + error.what());
  }
}

EncodedContainer encode_stream(std::span<const Symbol> symbols, const PrefixCode& code) {
  EncodedContainer container;
  for (const auto& entry : code.canonical_entries()) container.code.push_back({entry.symbol, entry.length});
  BitWriter writer;
  for (Symbol symbol : symbols) {
    const CodeEntry* entry = code.find(symbol);
    if (entry == nullptr) {
      throw Error(ErrorCode::kUnknownSymbol, "symbol " + std::to_string(symbol) + " is not in the code");
    }
    writer.put(entry->bits, entry->length);
  }
  container.symbol_count = symbols.size();
  container.payload_bits = writer.count();
  container.payload = writer.take();
  return container;
}

DecodeResult decode_stream(const EncodedContainer& container, const TableSet& tables) {
  if (container.code != tables.code_lengths()) {
    throw Error(ErrorCode::kTableMismatch, "tables were compiled from a different code");
  }
  DecodeResult result;
  const auto& all = tables.tables();
  std::size_t levels = 0;
  for (const auto& table : all) levels = std::max(levels, table.block_level);
  result.meter.accesses.assign(levels, 0);
  result.symbols.reserve(container.symbol_count);
  const std::span<const std::uint8_t> payload(container.payload);
  std::uint64_t pos = 0;
  for (std::uint64_t produced = 0; produced < container.symbol_count; ++produced) {
    const LookupTable* table = &all.front();
    for (;;) {
      if (pos >= container.payload_bits) {
        throw Error(ErrorCode::kCorruptContainer, "payload ends inside symbol " + std::to_string(produced));
      }
      ++result.meter.accesses[table->block_level - 1];
      const TableSlot& slot = table->slots[peek_bits(payload, pos, table->width)];
      if (slot.kind == SlotKind::kDecoded) {
        pos += slot.bits_consumed;
        if (pos > container.payload_bits) {
          throw Error(ErrorCode::kCorruptContainer, "codeword runs past the payload");
        }
        result.symbols.push_back(slot.symbol);
        break;
      }
      if (slot.kind == SlotKind::kInvalid) {
        throw Error(ErrorCode::kCorruptContainer, "bit pattern matches no codeword");
      }
      pos += static_cast<std::uint64_t>(table->width);
      table = &all[slot.child];
    }
  }
  if (pos != container.payload_bits) {
    throw Error(ErrorCode::kCorruptContainer, "payload has " + std::to_string(container.payload_bits - pos) +
                                                  " trailing bits");
  }
  return result;
}

Rational measured_cost(const AccessMeter& meter, const BlockingScheme& scheme) {
  Rational total(0);
  for (std::size_t k = 0; k < meter.accesses.size(); ++k) {
    total += scheme.block(k + 1).cost * static_cast<std::int64_t>(meter.accesses[k]);
  }
  return total;
}

}  // namespace dpfx
