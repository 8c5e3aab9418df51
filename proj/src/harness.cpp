#include "dpfx/harness.hpp"

#include <algorithm>

#include "dpfx/codec.hpp"
#include "dpfx/error.hpp"
#include "dpfx/huffman.hpp"
#include "dpfx/io.hpp"
#include "dpfx/tree.hpp"

namespace dpfx {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::kExact;
  if (name == "fixed") return Algorithm::kFixed;
  if (name == "approx") return Algorithm::kApprox;
  if (name == "const-k") return Algorithm::kConstK;
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kExact: return "exact";
    case Algorithm::kFixed: return "fixed";
    case Algorithm::kApprox: return "approx";
    case Algorithm::kConstK: return "const-k";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::kTable;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (budget.absolute.has_value() == budget.factor.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of an absolute budget or a budget factor");
  }
  if (budget.factor && *budget.factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "budget factor must be >= 1");
  }
  if (budget.absolute && *budget.absolute < 0) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
  if (epsilon <= 0 || epsilon > 1) throw Error(ErrorCode::kInvalidArgument, "epsilon must be in (0, 1]");
  if (delta <= 0 || delta > 1) throw Error(ErrorCode::kInvalidArgument, "delta must be in (0, 1]");
}

Count resolve_budget(const BudgetSpec& spec, Count huffman_length) {
  if (spec.absolute) return *spec.absolute;
  const Rational factor = spec.factor.value_or(Rational(1));
  // floor(factor * H) without overflowing the rational's intermediate product.
  const __int128 scaled = static_cast<__int128>(factor.numerator()) * huffman_length;
  return static_cast<Count>(scaled / factor.denominator());
}

SolveOutcome run_solver(const FrequencyTable& table, const BlockingScheme& scheme, Count budget,
                        Algorithm algorithm, const Rational& epsilon, const Rational& delta,
                        const DpOptions& options) {
  switch (algorithm) {
    case Algorithm::kExact:
      return {solve_exact(table, scheme, budget, options), std::nullopt, false};
    case Algorithm::kFixed:
      return {solve_fixed_block_levels(table, scheme, budget, options), std::nullopt, false};
    case Algorithm::kApprox: {
      auto result = solve_pseudo_approx(table, scheme, budget, epsilon, options);
      return {std::move(result.solution), result.grid, result.exact_fallback};
    }
    case Algorithm::kConstK: {
      auto result = solve_constant_hierarchy(table, scheme, budget, epsilon, delta, options);
      return {std::move(result.solution), result.grid, result.exact_fallback};
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

Analysis analyze(const FrequencyTable& table, const BlockingScheme& scheme) {
  Analysis analysis;
  analysis.symbols = table.size();
  analysis.total = table.total();
  analysis.hierarchies = hierarchy_count(scheme);
  auto huffman = huffman_dp(table);
  analysis.huffman_length = huffman.codelength;
  analysis.huffman_decode = decode_time_from_shape(table, huffman.shape, scheme);
  analysis.huffman_per_block = per_block_counts(huffman.shape, scheme);
  analysis.huffman_shape = std::move(huffman.shape);
  return analysis;
}

OptimizeReport optimize(const FrequencyTable& table, const BlockingScheme& scheme,
                        const RunConfig& config) {
  config.validate();
  Analysis baseline = analyze(table, scheme);
  const Count budget = resolve_budget(config.budget, baseline.huffman_length);
  SolveOutcome outcome =
      run_solver(table, scheme, budget, config.algorithm, config.epsilon, config.delta, config.options);
  PrefixCode code = build_tree_from_shape(table, outcome.solution.shape);
  const auto& report = outcome.solution.report;
  Rational speedup = baseline.huffman_decode / report.decode_time;
  Rational relaxation = Rational(report.code_length, baseline.huffman_length) - 1;
  return {std::move(baseline), budget, std::move(outcome), std::move(code), speedup, relaxation};
}

SimulationTable simulate(const FrequencyTable& table, const std::vector<std::string>& patterns,
                         const std::vector<Rational>& epsilons, const std::vector<std::string>& latencies,
                         Algorithm algorithm, const Rational& delta, const DpOptions& options) {
  SimulationTable sim;
  sim.latencies = latencies;
  for (const auto& pattern : patterns) {
    for (const auto& eps : epsilons) sim.columns.emplace_back(pattern, eps);
  }
  const bool approximate = algorithm == Algorithm::kApprox || algorithm == Algorithm::kConstK;
  for (const auto& latency : latencies) {
    auto& row = sim.cells.emplace_back();
    for (const auto& [pattern, eps] : sim.columns) {
      const BlockingScheme scheme = io::instantiate_scheme(pattern, latency);
      const Analysis baseline = analyze(table, scheme);
      BudgetSpec spec;
      if (approximate) {
        spec.absolute = baseline.huffman_length;
      } else {
        spec.factor = 1 + eps;
      }
      const Count budget = resolve_budget(spec, baseline.huffman_length);
      const auto outcome = run_solver(table, scheme, budget, algorithm, eps, delta, options);
      const auto& report = outcome.solution.report;
      row.push_back({pattern, eps, latency, baseline.huffman_decode / report.decode_time, report.code_length,
                     Rational(report.code_length, baseline.huffman_length) - 1});
    }
  }
  return sim;
}

BenchResult bench_decode(const std::string& label, std::span<const std::uint8_t> data,
                         const PrefixCode& code, const BlockingScheme& scheme, int repeats) {
  const std::vector<Symbol> symbols(data.begin(), data.end());
  const auto container = encode_stream(symbols, code);
  const auto tables = compile_tables(code, scheme);
  BenchResult result;
  result.label = label;
  result.symbols = symbols.size();
  result.tables = tables.tables().size();
  repeats = std::max(1, repeats);
  auto best = std::chrono::nanoseconds::max();
  for (int k = 0; k < repeats; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const auto decoded = decode_stream(container, tables);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed));
    if (k == 0) {
      if (decoded.symbols != symbols) throw Error(ErrorCode::kCorruptContainer, "bench round trip failed");
      result.model_cost = measured_cost(decoded.meter, scheme);
    }
  }
  result.nanos_per_symbol =
      symbols.empty() ? 0.0 : static_cast<double>(best.count()) / static_cast<double>(symbols.size());
  return result;
}

}  // namespace dpfx
