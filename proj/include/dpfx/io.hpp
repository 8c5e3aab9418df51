#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpfx/model.hpp"

namespace dpfx::io {

enum class SourceKind { kBytes, kCsv, kJson };

// Byte histogram. Throws kEmptyInput.
FrequencyTable histogram(std::span<const std::uint8_t> bytes);

// "symbol,count" lines. A symbol token is an integer 0..65535 or a single
// character (its byte value). Blank lines and a "symbol,count" header are
// skipped. Throws kMalformedTable, kEmptyInput.
FrequencyTable parse_frequency_csv(std::string_view text);

// Either {"<symbol>": count, ...} or [{"symbol": s, "count": c}, ...], with
// the same symbol token rule as the CSV reader.
FrequencyTable parse_frequency_json(std::string_view text);

FrequencyTable ingest_frequencies(std::span<const std::uint8_t> source, SourceKind kind);

// Guesses from the extension: .csv, .json, anything else is raw bytes.
SourceKind kind_from_path(const std::filesystem::path& path);

// "(w,q),(w,q),..." with an optional trailing ",..." for extend.
// Throws ParseError carrying the offending character offset.
BlockingScheme parse_blocking_scheme(std::string_view text);

// Replaces every standalone "x" cost token with `latency` before parsing,
// e.g. "(4,1),(4,x),..." at latency 10.
BlockingScheme instantiate_scheme(std::string_view pattern, std::string_view latency);

// One "symbol length" pair per line in canonical order.
std::string format_codebook(const PrefixCode& code);
PrefixCode parse_codebook(std::string_view text);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dpfx::io
