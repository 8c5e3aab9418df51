#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <functional>
#include <string>

#include "dpfx/error.hpp"
#include "dpfx/harness.hpp"
#include "dpfx/io.hpp"
#include "dpfx/tree.hpp"
#include "fixtures.hpp"

using namespace dpfx;

#ifndef DPFX_TEST_DATA
#define DPFX_TEST_DATA "tests/data"
#endif

namespace {

std::span<const std::uint8_t> as_bytes(std::string_view text) {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIo;
}

std::size_t parse_position(std::string_view text) {
  try {
    io::parse_blocking_scheme(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error");
  return 0;
}

}  // namespace

TEST_CASE("byte histogram") {
  auto table = io::ingest_frequencies(as_bytes("aab"), io::SourceKind::kBytes);
  CHECK(table.size() == 2);
  CHECK(table.frequency_of('a') == 2);
  CHECK(table.frequency_of('b') == 1);
  auto one = io::ingest_frequencies(as_bytes("zzzz"), io::SourceKind::kBytes);
  CHECK(one.size() == 1);
  CHECK(code_of([] { io::ingest_frequencies({}, io::SourceKind::kBytes); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("csv tables") {
  auto table = io::parse_frequency_csv("x,25\ny,9\nz,6\nw,4\nu,1\nv,1");
  CHECK(prefix_sums(table) == std::vector<Count>{0, 1, 2, 6, 12, 21, 46});
  CHECK(table.frequency_of('x') == 25);
  auto numeric = io::parse_frequency_csv("symbol,count\r\n300,2\n7,0\n\n,,5\n");
  CHECK(numeric.size() == 2);
  CHECK(numeric.frequency_of(300) == 2);
  CHECK(numeric.frequency_of(',') == 5);
  CHECK(code_of([] { io::parse_frequency_csv("ab,3"); }) == ErrorCode::kMalformedTable);
  CHECK(code_of([] { io::parse_frequency_csv("a,-3"); }) == ErrorCode::kMalformedTable);
  CHECK(code_of([] { io::parse_frequency_csv("a 3"); }) == ErrorCode::kMalformedTable);
  CHECK(code_of([] { io::parse_frequency_csv("a,1\na,2"); }) == ErrorCode::kMalformedTable);
  CHECK(code_of([] { io::parse_frequency_csv("a,0"); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("json tables") {
  auto object = io::parse_frequency_json(R"({"x": 25, "y": 9, "7": 3})");
  CHECK(object.frequency_of('x') == 25);
  CHECK(object.frequency_of(7) == 3);
  auto array = io::parse_frequency_json(R"([{"symbol": 1, "count": 4}, {"symbol": "q", "count": 2}])");
  CHECK(array.frequency_of(1) == 4);
  CHECK(array.frequency_of('q') == 2);
  CHECK(code_of([] { io::parse_frequency_json("[1,2"); }) == ErrorCode::kMalformedTable);
  CHECK(code_of([] { io::parse_frequency_json(R"({"x": "many"})"); }) == ErrorCode::kMalformedTable);
  CHECK(code_of([] { io::parse_frequency_json("{}"); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("source kind from extension") {
  CHECK(io::kind_from_path("a/b.CSV") == io::SourceKind::kCsv);
  CHECK(io::kind_from_path("t.json") == io::SourceKind::kJson);
  CHECK(io::kind_from_path("t.txt") == io::SourceKind::kBytes);
}

TEST_CASE("blocking scheme grammar") {
  auto extending = io::parse_blocking_scheme("(4,1),(4,20),...");
  CHECK(extending.extend());
  CHECK(extending.blocks() == std::vector<Block>{{4, Rational(1)}, {4, Rational(20)}});
  auto plain = io::parse_blocking_scheme(" (2, 1), (3, 5) ");
  CHECK_FALSE(plain.extend());
  CHECK(plain.blocks().size() == 2);
  auto fractional = io::parse_blocking_scheme("(1,0.5),(2,3/4)");
  CHECK(fractional.blocks()[0].cost == Rational(1, 2));
  CHECK(fractional.blocks()[1].cost == Rational(3, 4));

  CHECK(parse_position("(0,1)") == 1);
  CHECK(parse_position("(4,1),") == 6);
  CHECK(parse_position("(4,1)x") == 5);
  CHECK(parse_position("(4,0)") == 3);
  CHECK(parse_position("...") == 0);
  CHECK(parse_position("(a,1)") == 1);
  CHECK(parse_position("") == 0);
  CHECK(code_of([] { io::parse_blocking_scheme("(4,1),..,"); }) == ErrorCode::kParseError);

  auto instantiated = io::instantiate_scheme("(4,1),(4,x),...", "10");
  CHECK(instantiated.blocks()[1].cost == Rational(10));
}

TEST_CASE("codebook text round trip") {
  auto table = fixtures::six_symbol_table();
  auto code = build_tree_from_shape(table, TreeShape{{5, 4, 2, 1, 0}});
  auto text = io::format_codebook(code);
  CHECK(text == "0 2\n1 2\n2 2\n3 3\n4 4\n5 4\n");
  CHECK(io::parse_codebook(text).canonical_entries() == code.canonical_entries());
  CHECK(code_of([] { io::parse_codebook("1 2 3\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { io::parse_codebook("\n"); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("run config validation and budgets") {
  RunConfig config;
  CHECK_THROWS_AS(config.validate(), Error);
  config.budget.factor = Rational(99, 100);
  CHECK_THROWS_AS(config.validate(), Error);
  config.budget.factor = Rational(102, 100);
  CHECK_NOTHROW(config.validate());
  config.budget.absolute = 5;
  CHECK_THROWS_AS(config.validate(), Error);
  CHECK(resolve_budget({std::nullopt, Rational(115, 100)}, 87) == 100);
  CHECK(resolve_budget({std::nullopt, Rational(102, 100)}, 87) == 88);
  CHECK(resolve_budget({Count{42}, std::nullopt}, 87) == 42);
  CHECK(parse_algorithm("const-k") == Algorithm::kConstK);
  CHECK_THROWS_AS(parse_algorithm("greedy"), Error);
}

TEST_CASE("optimize the worked example") {
  auto table = fixtures::six_symbol_table();
  RunConfig config;
  config.budget.factor = Rational(115, 100);
  auto scheme = io::parse_blocking_scheme("(2,1),(3,5),...");
  auto report = optimize(table, scheme, config);
  CHECK(report.baseline.huffman_length == 87);
  CHECK(report.baseline.huffman_decode == Rational(106));
  CHECK(report.budget == 100);
  CHECK(report.outcome.solution.report.decode_time <= Rational(76));
  CHECK(report.speedup >= Rational(106, 76));
  CHECK(report.realized_relaxation == Rational(report.outcome.solution.report.code_length, 87) - 1);

  config.budget.factor = Rational(1);
  auto tight = optimize(table, scheme, config);
  CHECK(tight.outcome.solution.report.decode_time <= tight.baseline.huffman_decode);
  CHECK(tight.speedup >= 1);
}

TEST_CASE("simulate the worked example") {
  auto table = fixtures::six_symbol_table();
  auto sim = simulate(table, {"(2,1),(3,x),..."}, {Rational(15, 100), Rational(3, 10)}, {"1", "5", "20"},
                      Algorithm::kExact, Rational(1, 4), {});
  REQUIRE(sim.cells.size() == 3);
  for (std::size_t row = 0; row < 3; ++row) {
    const std::int64_t q = row == 0 ? 1 : row == 1 ? 5 : 20;
    for (const auto& cell : sim.cells[row]) {
      CHECK(cell.speedup >= 1);
      CHECK(cell.speedup >= Rational(46 + 12 * q, 46 + 6 * q));
    }
    // More relaxation never hurts the exact solver.
    CHECK(sim.cells[row][1].speedup >= sim.cells[row][0].speedup);
  }
}

TEST_CASE("simulated speedups on a public-domain text") {
  auto bytes = io::read_file(std::filesystem::path(DPFX_TEST_DATA) / "genesis1.txt");
  auto table = io::histogram(bytes);
  auto sim = simulate(table, {"(4,1),(4,x),..."}, {Rational(2, 100)}, {"1", "10", "100"}, Algorithm::kApprox,
                      Rational(1, 4), {});
  Rational previous(0);
  for (const auto& row : sim.cells) {
    CHECK(row[0].speedup >= 1);
    CHECK(row[0].speedup >= previous);
    CHECK(row[0].relaxation <= Rational(2, 100));
    previous = row[0].speedup;
    MESSAGE("x=" << row[0].latency << " speedup " << to_double(row[0].speedup));
  }
}

TEST_CASE("bench decodes and meters") {
  auto bytes = io::read_file(std::filesystem::path(DPFX_TEST_DATA) / "genesis1.txt");
  auto table = io::histogram(bytes);
  auto scheme = io::parse_blocking_scheme("(4,1),(4,10),...");
  auto huffman = analyze(table, scheme);
  auto code = build_tree_from_shape(table, huffman.huffman_shape);
  auto result = bench_decode("huffman", bytes, code, scheme, 2);
  CHECK(result.symbols == bytes.size());
  CHECK(result.model_cost == huffman.huffman_decode);
}
