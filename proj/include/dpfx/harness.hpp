#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpfx/dopt_approx.hpp"
#include "dpfx/dopt_exact.hpp"
#include "dpfx/model.hpp"

namespace dpfx {

enum class Algorithm { kExact, kFixed, kApprox, kConstK };
enum class OutputFormat { kTable, kCsv, kJson };

Algorithm parse_algorithm(std::string_view name);
const char* algorithm_name(Algorithm algo);
OutputFormat parse_format(std::string_view name);

// Either an absolute codelength or a factor over the Huffman codelength.
struct BudgetSpec {
  std::optional<Count> absolute;
  std::optional<Rational> factor;
};

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::string scheme_text = "(4,1),(4,10),...";
  BudgetSpec budget;
  Algorithm algorithm = Algorithm::kExact;
  Rational epsilon{1, 20};
  Rational delta{1, 4};
  OutputFormat format = OutputFormat::kTable;
  std::optional<std::filesystem::path> codebook;
  DpOptions options;

  // Throws kInvalidArgument: factor < 1, both or neither budget forms set,
  // eps or delta outside (0, 1].
  void validate() const;
};

// floor(factor * huffman) or the absolute value.
Count resolve_budget(const BudgetSpec& spec, Count huffman_length);

struct SolveOutcome {
  Solution solution;
  std::optional<RoundingGrid> grid;
  bool exact_fallback = false;
};

SolveOutcome run_solver(const FrequencyTable& table, const BlockingScheme& scheme, Count budget,
                        Algorithm algorithm, const Rational& epsilon, const Rational& delta,
                        const DpOptions& options);

struct Analysis {
  std::size_t symbols = 0;
  Count total = 0;
  std::size_t hierarchies = 0;
  Count huffman_length = 0;
  Rational huffman_decode;
  TreeShape huffman_shape;
  std::vector<Count> huffman_per_block;
};

// Huffman baseline under `scheme`. Throws kSchemeTooShort when the Huffman
// tree is deeper than a non-extending scheme.
Analysis analyze(const FrequencyTable& table, const BlockingScheme& scheme);

struct OptimizeReport {
  Analysis baseline;
  Count budget = 0;
  SolveOutcome outcome;
  PrefixCode code;
  Rational speedup;             // baseline decode / optimized decode
  Rational realized_relaxation;  // optimized length / Huffman length - 1
};

OptimizeReport optimize(const FrequencyTable& table, const BlockingScheme& scheme,
                        const RunConfig& config);

// Rows are latency factors, columns (scheme pattern, eps) pairs. With the
// approximate algorithms eps is the solver's relaxation over the Huffman
// length; the exact ones run at budget floor((1+eps) * Huffman).
struct SimulationCell {
  std::string pattern;
  Rational epsilon;
  std::string latency;
  Rational speedup;
  Count length = 0;
  Rational relaxation;
};

struct SimulationTable {
  std::vector<std::string> latencies;
  std::vector<std::pair<std::string, Rational>> columns;
  std::vector<std::vector<SimulationCell>> cells;  // [row][column]
};

SimulationTable simulate(const FrequencyTable& table, const std::vector<std::string>& patterns,
                         const std::vector<Rational>& epsilons, const std::vector<std::string>& latencies,
                         Algorithm algorithm, const Rational& delta, const DpOptions& options);

struct BenchResult {
  std::string label;
  std::uint64_t symbols = 0;
  std::size_t tables = 0;
  Rational model_cost;
  double nanos_per_symbol = 0;
};

// Wall-clock table-driven decode of `data` with the given code.
BenchResult bench_decode(const std::string& label, std::span<const std::uint8_t> data,
                         const PrefixCode& code, const BlockingScheme& scheme, int repeats);

}  // namespace dpfx
