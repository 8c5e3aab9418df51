#include "dpfx/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "dpfx/error.hpp"

namespace dpfx::io {
namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

template <typename T>
bool parse_int(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

Symbol parse_symbol(std::string_view token, std::size_t line) {
  int value = 0;
  if (parse_int(token, value) && value >= 0 && value <= 65535) return static_cast<Symbol>(value);
  if (token.size() == 1) return static_cast<unsigned char>(token.front());
  throw Error(ErrorCode::kMalformedTable,
              "line " + std::to_string(line) + ": bad symbol '" + std::string(token) + "'");
}

FrequencyTable make_table(const std::vector<SymbolCount>& counts) {
  try {
    return FrequencyTable::from_counts(counts);
  } catch (const Error& error) {
    if (error.code() == ErrorCode::kInvalidArgument) {
      throw Error(ErrorCode::kMalformedTable, error.what());
    }
    throw;
  }
}

class SchemeParser {
 public:
  explicit SchemeParser(std::string_view text) : text_(text) {}

  BlockingScheme parse() {
    std::vector<Block> blocks;
    bool extend = false;
    skip_space();
    for (;;) {
      if (peek() == '.') {
        if (blocks.empty()) fail("expected '(' before '...'");
        expect_literal("...");
        extend = true;
        break;
      }
      blocks.push_back(parse_block());
      skip_space();
      if (at_end()) break;
      expect(',');
      skip_space();
    }
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return BlockingScheme(std::move(blocks), extend);
  }

 private:
  Block parse_block() {
    expect('(');
    skip_space();
    const std::size_t width_at = pos_;
    const std::string_view width_text = take_until(',');
    std::int64_t width = 0;
    if (!parse_int(trim(width_text), width)) fail_at(width_at, "width must be a decimal integer");
    if (width < 1) fail_at(width_at, "width must be >= 1");
    expect(',');
    skip_space();
    const std::size_t cost_at = pos_;
    const std::string_view cost_text = take_until(')');
    Rational cost;
    try {
      cost = parse_rational(trim(cost_text));
    } catch (const ParseError& error) {
      fail_at(cost_at + error.position(), "bad cost");
    }
    if (cost <= 0) fail_at(cost_at, "cost must be > 0");
    expect(')');
    return {width, cost};
  }

  std::string_view take_until(char stop) {
    const std::size_t start = pos_;
    while (!at_end() && text_[pos_] != stop && text_[pos_] != '(' && text_[pos_] != ')' &&
           !(stop == ')' && text_[pos_] == ',')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_literal(std::string_view literal) {
    for (char c : literal) expect(c);
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] static void fail_at(std::size_t at, const std::string& message) {
    throw ParseError(at, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FrequencyTable histogram(std::span<const std::uint8_t> bytes) {
  std::array<Count, 256> counts{};
  for (std::uint8_t byte : bytes) ++counts[byte];
  std::vector<SymbolCount> entries;
  for (std::size_t value = 0; value < counts.size(); ++value) {
    if (counts[value] > 0) entries.push_back({static_cast<Symbol>(value), counts[value]});
  }
  return FrequencyTable::from_counts(entries);
}

FrequencyTable parse_frequency_csv(std::string_view text) {
  std::vector<SymbolCount> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    // Split on the last comma so "," itself can be a symbol.
    const std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos || comma == 0) {
      throw Error(ErrorCode::kMalformedTable,
                  "line " + std::to_string(line_no) + ": expected 'symbol,count'");
    }
    std::string_view symbol = line.substr(0, comma);
    if (symbol.size() != 1) symbol = trim(symbol);
    const std::string_view count_text = trim(line.substr(comma + 1));
    if (line_no == 1 && symbol == "symbol" && count_text == "count") continue;
    Count count = 0;
    if (!parse_int(count_text, count) || count < 0) {
      throw Error(ErrorCode::kMalformedTable,
                  "line " + std::to_string(line_no) + ": bad count '" + std::string(count_text) + "'");
    }
    entries.push_back({parse_symbol(symbol, line_no), count});
  }
  return make_table(entries);
}

FrequencyTable parse_frequency_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    throw Error(ErrorCode::kMalformedTable, std::string("JSON: ") + error.what());
  }
  std::vector<SymbolCount> entries;
  auto count_of = [](const nlohmann::json& value, std::size_t index) {
    if (!value.is_number_integer() || value.get<Count>() < 0) {
      throw Error(ErrorCode::kMalformedTable, "entry " + std::to_string(index) + ": bad count");
    }
    return value.get<Count>();
  };
  std::size_t index = 0;
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      ++index;
      entries.push_back({parse_symbol(key, index), count_of(value, index)});
    }
  } else if (doc.is_array()) {
    for (const auto& item : doc) {
      ++index;
      if (!item.is_object() || !item.contains("symbol") || !item.contains("count")) {
        throw Error(ErrorCode::kMalformedTable, "entry " + std::to_string(index) + ": need symbol and count");
      }
      const auto& symbol = item["symbol"];
      Symbol id = 0;
      if (symbol.is_number_integer()) {
        id = parse_symbol(std::to_string(symbol.get<std::int64_t>()), index);
      } else if (symbol.is_string()) {
        id = parse_symbol(symbol.get<std::string>(), index);
      } else {
        throw Error(ErrorCode::kMalformedTable, "entry " + std::to_string(index) + ": bad symbol");
      }
      entries.push_back({id, count_of(item["count"], index)});
    }
  } else {
    throw Error(ErrorCode::kMalformedTable, "JSON frequency table must be an object or array");
  }
  return make_table(entries);
}

FrequencyTable ingest_frequencies(std::span<const std::uint8_t> source, SourceKind kind) {
  const std::string_view text(reinterpret_cast<const char*>(source.data()), source.size());
  switch (kind) {
    case SourceKind::kCsv:
      return parse_frequency_csv(text);
    case SourceKind::kJson:
      return parse_frequency_json(text);
    case SourceKind::kBytes:
      break;
  }
  return histogram(source);
}

SourceKind kind_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return SourceKind::kCsv;
  if (ext == ".json") return SourceKind::kJson;
  return SourceKind::kBytes;
}

BlockingScheme parse_blocking_scheme(std::string_view text) {
  try {
    return SchemeParser(text).parse();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& error) {
    throw ParseError(0, error.what());
  }
}

BlockingScheme instantiate_scheme(std::string_view pattern, std::string_view latency) {
  std::string text;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const bool standalone =
        pattern[k] == 'x' && (k == 0 || !std::isalnum(static_cast<unsigned char>(pattern[k - 1]))) &&
        (k + 1 == pattern.size() || !std::isalnum(static_cast<unsigned char>(pattern[k + 1])));
    if (standalone) {
      text += latency;
    } else {
      text += pattern[k];
    }
  }
  return parse_blocking_scheme(text);
}

std::string format_codebook(const PrefixCode& code) {
  std::ostringstream out;
  for (const auto& entry : code.canonical_entries()) out << entry.symbol << ' ' << entry.length << '\n';
  return out.str();
}

PrefixCode parse_codebook(std::string_view text) {
  std::vector<SymbolLength> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    std::istringstream fields(line);
    long symbol = -1;
    int length = 0;
    std::string extra;
    if (!(fields >> symbol >> length) || (fields >> extra) || symbol < 0 || symbol > 65535) {
      throw ParseError(0, "codebook line " + std::to_string(line_no) + " is not 'symbol length'");
    }
    entries.push_back({static_cast<Symbol>(symbol), length});
  }
  if (entries.empty()) throw Error(ErrorCode::kEmptyInput, "codebook is empty");
  return PrefixCode::from_canonical(entries);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

}  // namespace dpfx::io
