#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpfx/codec.hpp"
#include "dpfx/error.hpp"
#include "dpfx/harness.hpp"
#include "dpfx/io.hpp"
#include "dpfx/tree.hpp"

using namespace dpfx;
using nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInfeasible = 2, kParse = 3, kWorkLimit = 4 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
    case ErrorCode::kNoValidTree:
      return kInfeasible;
    case ErrorCode::kParseError:
    case ErrorCode::kMalformedTable:
      return kParse;
    case ErrorCode::kWorkLimitExceeded:
      return kWorkLimit;
    default:
      return kFailure;
  }
}

// Key/value report rendered as an aligned table, two-column CSV or JSON.
class Report {
 public:
  void add(const std::string& key, const std::string& value) { rows_.push_back({key, value, value}); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, Count value) { rows_.push_back({key, std::to_string(value), value}); }
  // Exact rationals: integers stay numbers in JSON, fractions become "p/q".
  void add(const std::string& key, const Rational& value) {
    ordered_json json = value.denominator() == 1 ? ordered_json(value.numerator()) : ordered_json(to_string(value));
    rows_.push_back({key, to_string(value), json});
  }
  void add_real(const std::string& key, double value, int digits) {
    std::ostringstream text;
    text << std::fixed << std::setprecision(digits) << value;
    rows_.push_back({key, text.str(), std::stod(text.str())});
  }

  void print(OutputFormat format, std::ostream& out) const {
    switch (format) {
      case OutputFormat::kTable: {
        std::size_t width = 0;
        for (const auto& row : rows_) width = std::max(width, row.key.size());
        for (const auto& row : rows_) {
          out << std::left << std::setw(static_cast<int>(width) + 2) << row.key << row.text << '\n';
        }
        break;
      }
      case OutputFormat::kCsv:
        out << "key,value\n";
        for (const auto& row : rows_) out << row.key << ',' << quote_csv(row.text) << '\n';
        break;
      case OutputFormat::kJson: {
        ordered_json doc = ordered_json::object();
        for (const auto& row : rows_) doc[row.key] = row.json;
        out << doc.dump(2) << '\n';
        break;
      }
    }
  }

  static std::string quote_csv(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }

 private:
  struct Row {
    std::string key;
    std::string text;
    ordered_json json;
  };
  std::vector<Row> rows_;
};

std::string join_counts(const std::vector<Count>& counts) {
  std::string out;
  for (std::size_t k = 0; k < counts.size(); ++k) out += (k ? " " : "") + std::to_string(counts[k]);
  return out;
}

std::string fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

struct Options {
  std::string input;
  std::string output;
  std::string scheme = "(4,1),(4,10),...";
  std::vector<std::string> schemes;
  std::string budget_factor;
  Count budget = -1;
  std::string algo = "exact";
  std::vector<std::string> epsilons;
  std::string delta = "0.25";
  std::string format = "table";
  std::string codebook;
  std::vector<std::string> latencies{"1", "10", "100"};
  std::int64_t height = 0;
  std::uint64_t work_limit = DpOptions{}.work_limit;
  int repeats = 5;
  std::string input_kind = "auto";
};

FrequencyTable load_table(const Options& opt) {
  const auto bytes = io::read_file(opt.input);
  io::SourceKind kind = io::kind_from_path(opt.input);
  if (opt.input_kind == "bytes") kind = io::SourceKind::kBytes;
  if (opt.input_kind == "csv") kind = io::SourceKind::kCsv;
  if (opt.input_kind == "json") kind = io::SourceKind::kJson;
  return io::ingest_frequencies(bytes, kind);
}

RunConfig make_config(const Options& opt) {
  RunConfig config;
  config.inputs.push_back(opt.input);
  config.scheme_text = opt.scheme;
  if (!opt.budget_factor.empty()) config.budget.factor = parse_rational(opt.budget_factor);
  if (opt.budget >= 0) config.budget.absolute = opt.budget;
  if (!config.budget.factor && !config.budget.absolute) config.budget.factor = Rational(1);
  config.algorithm = parse_algorithm(opt.algo);
  if (opt.epsilons.size() > 1) throw Error(ErrorCode::kInvalidArgument, "give a single --epsilon here");
  if (!opt.epsilons.empty()) config.epsilon = parse_rational(opt.epsilons.front());
  config.delta = parse_rational(opt.delta);
  config.format = parse_format(opt.format);
  if (!opt.codebook.empty()) config.codebook = opt.codebook;
  if (opt.height > 0) config.options.height = opt.height;
  config.options.work_limit = opt.work_limit;
  config.validate();
  return config;
}

int cmd_analyze(const Options& opt) {
  const auto table = load_table(opt);
  const auto scheme = io::parse_blocking_scheme(opt.scheme);
  const auto analysis = analyze(table, scheme);
  Report report;
  report.add("symbols", static_cast<Count>(analysis.symbols));
  report.add("total", analysis.total);
  report.add("scheme", scheme.to_string());
  report.add("hierarchies", static_cast<Count>(analysis.hierarchies));
  report.add("huffman_length", analysis.huffman_length);
  report.add("huffman_decode", analysis.huffman_decode);
  report.add("huffman_height", analysis.huffman_shape.height());
  report.add("huffman_shape", to_string(analysis.huffman_shape));
  report.add("huffman_per_block", join_counts(analysis.huffman_per_block));
  report.print(parse_format(opt.format), std::cout);
  return kOk;
}

int cmd_optimize(const Options& opt) {
  const auto config = make_config(opt);
  const auto table = load_table(opt);
  const auto scheme = io::parse_blocking_scheme(opt.scheme);
  const auto result = optimize(table, scheme, config);
  const auto& solved = result.outcome.solution.report;
  Report report;
  report.add("symbols", static_cast<Count>(table.size()));
  report.add("scheme", scheme.to_string());
  report.add("algorithm", algorithm_name(config.algorithm));
  report.add("budget", result.budget);
  report.add("huffman_length", result.baseline.huffman_length);
  report.add("huffman_decode", result.baseline.huffman_decode);
  report.add("huffman_per_block", join_counts(result.baseline.huffman_per_block));
  report.add("optimized_length", solved.code_length);
  report.add("optimized_decode", solved.decode_time);
  report.add("optimized_per_block", join_counts(solved.per_block_counts));
  report.add("optimized_shape", to_string(result.outcome.solution.shape));
  report.add_real("speedup", to_double(result.speedup), 6);
  report.add_real("relaxation", to_double(result.realized_relaxation), 6);
  if (result.outcome.grid) {
    report.add("lambda", result.outcome.grid->lambda);
    report.add("height_bound", result.outcome.grid->height);
    report.add("exact_fallback", result.outcome.exact_fallback ? "yes" : "no");
  }
  if (config.codebook) {
    io::write_text(*config.codebook, io::format_codebook(result.code));
    report.add("codebook", config.codebook->string());
  }
  report.print(config.format, std::cout);
  return kOk;
}

int cmd_encode(const Options& opt) {
  if (opt.codebook.empty()) throw Error(ErrorCode::kInvalidArgument, "encode needs --codebook");
  if (opt.output.empty()) throw Error(ErrorCode::kInvalidArgument, "encode needs an output path");
  const auto code = io::parse_codebook(io::read_text(opt.codebook));
  const auto bytes = io::read_file(opt.input);
  const std::vector<Symbol> symbols(bytes.begin(), bytes.end());
  const auto container = encode_stream(symbols, code);
  const auto out = serialize(container);
  io::write_file(opt.output, out);
  Report report;
  report.add("symbols", static_cast<Count>(container.symbol_count));
  report.add("payload_bits", static_cast<Count>(container.payload_bits));
  report.add("container_bytes", static_cast<Count>(out.size()));
  report.print(parse_format(opt.format), std::cout);
  return kOk;
}

int cmd_decode(const Options& opt) {
  if (opt.output.empty()) throw Error(ErrorCode::kInvalidArgument, "decode needs an output path");
  const auto container = parse_container(io::read_file(opt.input));
  const auto code = container_code(container);
  const auto scheme = io::parse_blocking_scheme(opt.scheme);
  if (!opt.codebook.empty()) {
    const auto expected = io::parse_codebook(io::read_text(opt.codebook));
    if (expected.canonical_entries() != code.canonical_entries()) {
      throw Error(ErrorCode::kTableMismatch, "container was not encoded with " + opt.codebook);
    }
  }
  const auto decoded = decode_stream(container, compile_tables(code, scheme));
  std::vector<std::uint8_t> bytes;
  bytes.reserve(decoded.symbols.size());
  for (Symbol s : decoded.symbols) {
    if (s > 255) throw Error(ErrorCode::kCorruptContainer, "decoded symbol does not fit a byte");
    bytes.push_back(static_cast<std::uint8_t>(s));
  }
  io::write_file(opt.output, bytes);

  const Rational measured = measured_cost(decoded.meter, scheme);
  Rational model(0);
  if (!bytes.empty()) model = decode_time(io::histogram(bytes), code, scheme);
  Report report;
  report.add("symbols", static_cast<Count>(decoded.symbols.size()));
  std::vector<Count> accesses(decoded.meter.accesses.begin(), decoded.meter.accesses.end());
  report.add("accesses_per_block", join_counts(accesses));
  report.add("measured_cost", measured);
  report.add("model_cost", model);
  report.add("agreement", measured == model ? "exact" : "MISMATCH");
  report.print(parse_format(opt.format), std::cout);
  return measured == model ? kOk : kFailure;
}

int cmd_simulate(const Options& opt) {
  const auto table = load_table(opt);
  std::vector<std::string> patterns = opt.schemes;
  if (patterns.empty()) patterns = {"(4,1),(4,x),...", "(8,1),(8,x),..."};
  std::vector<Rational> epsilons;
  for (const auto& text : opt.epsilons) epsilons.push_back(parse_rational(text));
  if (epsilons.empty()) epsilons = {Rational(2, 100), Rational(3, 100), Rational(6, 100)};
  for (const auto& eps : epsilons) {
    if (eps <= 0 || eps > 1) throw Error(ErrorCode::kInvalidArgument, "epsilon must be in (0, 1]");
  }
  DpOptions options;
  options.work_limit = opt.work_limit;
  if (opt.height > 0) options.height = opt.height;
  const auto algo = parse_algorithm(opt.algo);
  const auto sim = simulate(table, patterns, epsilons, opt.latencies, algo, parse_rational(opt.delta), options);

  const auto format = parse_format(opt.format);
  if (format == OutputFormat::kJson) {
    ordered_json doc;
    doc["algorithm"] = algorithm_name(algo);
    doc["cells"] = ordered_json::array();
    for (const auto& row : sim.cells) {
      for (const auto& cell : row) {
        doc["cells"].push_back({{"scheme", cell.pattern},
                                {"epsilon", to_string(cell.epsilon)},
                                {"latency", cell.latency},
                                {"speedup", std::stod(fixed(to_double(cell.speedup), 6))},
                                {"length", cell.length},
                                {"relaxation", std::stod(fixed(to_double(cell.relaxation), 6))}});
      }
    }
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  if (format == OutputFormat::kCsv) {
    std::cout << "latency";
    for (const auto& [pattern, eps] : sim.columns) std::cout << ',' << Report::quote_csv(pattern + " eps=" + to_string(eps));
    std::cout << '\n';
    for (std::size_t r = 0; r < sim.cells.size(); ++r) {
      std::cout << sim.latencies[r];
      for (const auto& cell : sim.cells[r]) std::cout << ',' << fixed(to_double(cell.speedup), 4);
      std::cout << '\n';
    }
    return kOk;
  }
  std::cout << "speedup (" << algorithm_name(algo) << "), rows: latency x\n";
  for (std::size_t c = 0; c < sim.columns.size(); ++c) {
    std::cout << "  [" << c + 1 << "] " << sim.columns[c].first << "  eps=" << to_string(sim.columns[c].second) << '\n';
  }
  std::cout << std::left << std::setw(8) << "x";
  for (std::size_t c = 0; c < sim.columns.size(); ++c) std::cout << std::setw(9) << ("[" + std::to_string(c + 1) + "]");
  std::cout << '\n';
  for (std::size_t r = 0; r < sim.cells.size(); ++r) {
    std::cout << std::setw(8) << sim.latencies[r];
    for (const auto& cell : sim.cells[r]) std::cout << std::setw(9) << fixed(to_double(cell.speedup), 4);
    std::cout << '\n';
  }
  return kOk;
}

int cmd_bench(const Options& opt) {
  const auto config = make_config(opt);
  const auto bytes = io::read_file(opt.input);
  const auto table = io::histogram(bytes);
  const auto scheme = io::parse_blocking_scheme(opt.scheme);
  const auto result = optimize(table, scheme, config);
  const auto huffman_code = build_tree_from_shape(table, result.baseline.huffman_shape);
  const auto base = bench_decode("huffman", bytes, huffman_code, scheme, opt.repeats);
  const auto tuned = bench_decode("optimized", bytes, result.code, scheme, opt.repeats);
  Report report;
  report.add("symbols", static_cast<Count>(base.symbols));
  report.add("huffman_tables", static_cast<Count>(base.tables));
  report.add("huffman_model_cost", base.model_cost);
  report.add_real("huffman_ns_per_symbol", base.nanos_per_symbol, 3);
  report.add("optimized_tables", static_cast<Count>(tuned.tables));
  report.add("optimized_model_cost", tuned.model_cost);
  report.add_real("optimized_ns_per_symbol", tuned.nanos_per_symbol, 3);
  report.add_real("model_speedup", to_double(base.model_cost / tuned.model_cost), 6);
  if (tuned.nanos_per_symbol > 0) report.add_real("wall_speedup", base.nanos_per_symbol / tuned.nanos_per_symbol, 3);
  report.print(config.format, std::cout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decode-time aware prefix code optimizer"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool budget) {
    sub->add_option("--scheme", opt.scheme, "blocking scheme, e.g. (4,1),(4,20),...");
    sub->add_option("--format", opt.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
    if (budget) {
      auto* factor = sub->add_option("--budget-factor", opt.budget_factor, "codelength budget over Huffman, e.g. 1.02");
      auto* absolute = sub->add_option("--budget", opt.budget, "absolute codelength budget");
      factor->excludes(absolute);
      sub->add_option("--algo", opt.algo, "exact | fixed | approx | const-k")
          ->check(CLI::IsMember({"exact", "fixed", "approx", "const-k"}));
      sub->add_option("--epsilon", opt.epsilons, "approximation slack");
      sub->add_option("--delta", opt.delta, "height relaxation for const-k");
      sub->add_option("--height", opt.height, "tree height bound");
      sub->add_option("--work-limit", opt.work_limit, "maximum DP cells");
    }
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "input file")->required();
    sub->add_option("--input-kind", opt.input_kind, "auto | bytes | csv | json")
        ->check(CLI::IsMember({"auto", "bytes", "csv", "json"}));
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Huffman baseline under a blocking scheme");
  add_input(analyze_cmd);
  add_common(analyze_cmd, false);

  auto* optimize_cmd = app.add_subcommand("optimize", "minimize decode time within a codelength budget");
  add_input(optimize_cmd);
  add_common(optimize_cmd, true);
  optimize_cmd->add_option("--codebook", opt.codebook, "write the canonical codebook here");

  auto* encode_cmd = app.add_subcommand("encode", "encode a file with a codebook");
  encode_cmd->add_option("input", opt.input, "input file")->required();
  encode_cmd->add_option("output", opt.output, "container path")->required();
  encode_cmd->add_option("--codebook", opt.codebook, "codebook file")->required();
  encode_cmd->add_option("--format", opt.format, "table | csv | json");

  auto* decode_cmd = app.add_subcommand("decode", "decode a container and meter table accesses");
  decode_cmd->add_option("input", opt.input, "container path")->required();
  decode_cmd->add_option("output", opt.output, "output file")->required();
  decode_cmd->add_option("--codebook", opt.codebook, "expected codebook");
  add_common(decode_cmd, false);

  auto* simulate_cmd = app.add_subcommand("simulate", "speedup table over latency factors");
  add_input(simulate_cmd);
  simulate_cmd->add_option("--scheme", opt.schemes, "scheme pattern with x as the latency, repeatable");
  simulate_cmd->add_option("--epsilon", opt.epsilons, "relaxation, repeatable");
  simulate_cmd->add_option("--latency", opt.latencies, "latency factors, repeatable");
  simulate_cmd->add_option("--algo", opt.algo, "exact | fixed | approx | const-k")
      ->check(CLI::IsMember({"exact", "fixed", "approx", "const-k"}));
  simulate_cmd->add_option("--delta", opt.delta, "height relaxation for const-k");
  simulate_cmd->add_option("--height", opt.height, "tree height bound");
  simulate_cmd->add_option("--work-limit", opt.work_limit, "maximum DP cells");
  simulate_cmd->add_option("--format", opt.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));

  auto* bench_cmd = app.add_subcommand("bench", "wall-clock decode of Huffman vs optimized tables");
  bench_cmd->add_option("input", opt.input, "input file")->required();
  add_common(bench_cmd, true);
  bench_cmd->add_option("--repeats", opt.repeats, "timed decode passes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(opt);
    if (*optimize_cmd) return cmd_optimize(opt);
    if (*encode_cmd) return cmd_encode(opt);
    if (*decode_cmd) return cmd_decode(opt);
    if (*simulate_cmd) {
      if (opt.algo == "exact" && simulate_cmd->count("--algo") == 0) opt.algo = "approx";
      return cmd_simulate(opt);
    }
    if (*bench_cmd) return cmd_bench(opt);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
