#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "dpfx/codec.hpp"
#include "dpfx/dopt_approx.hpp"
#include "dpfx/dopt_exact.hpp"
#include "dpfx/error.hpp"
#include "dpfx/harness.hpp"
#include "dpfx/huffman.hpp"
#include "dpfx/io.hpp"
#include "dpfx/oracle.hpp"
#include "dpfx/tree.hpp"

namespace py = pybind11;
using namespace dpfx;

namespace {

py::object fraction(const Rational& value) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(value.numerator(), value.denominator());
}

Rational to_rational(const py::handle& value) {
  if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
  if (py::isinstance<py::int_>(value)) return Rational(value.cast<std::int64_t>());
  // Fractions, and floats via their exact string form.
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator") && !py::isinstance<py::float_>(value)) {
    return Rational(value.attr("numerator").cast<std::int64_t>(), value.attr("denominator").cast<std::int64_t>());
  }
  return parse_rational(py::str(value).cast<std::string>());
}

FrequencyTable table_from_mapping(const std::map<int, Count>& counts) {
  std::vector<SymbolCount> entries;
  for (auto [symbol, count] : counts) {
    if (symbol < 0 || symbol > 65535) throw Error(ErrorCode::kInvalidArgument, "symbol out of range");
    entries.push_back({static_cast<Symbol>(symbol), count});
  }
  return FrequencyTable::from_counts(entries);
}

py::dict solution_dict(const Solution& solution) {
  py::dict out;
  out["length"] = solution.report.code_length;
  out["decode_time"] = fraction(solution.report.decode_time);
  out["shape"] = solution.shape.counts;
  out["per_block"] = solution.report.per_block_counts;
  out["budget"] = solution.report.budget;
  return out;
}

py::dict approx_dict(const ApproxSolution& result) {
  py::dict out = solution_dict(result.solution);
  out["lambda"] = result.grid.lambda;
  out["height"] = result.grid.height;
  out["exact_fallback"] = result.exact_fallback;
  return out;
}

DpOptions options_for(std::optional<std::int64_t> height) {
  DpOptions options;
  options.height = height;
  return options;
}

std::vector<std::pair<int, int>> lengths_of(const PrefixCode& code) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : code.canonical_entries()) out.emplace_back(e.symbol, e.length);
  return out;
}

PrefixCode code_from_lengths(const std::vector<std::pair<int, int>>& lengths) {
  std::vector<SymbolLength> entries;
  for (auto [symbol, length] : lengths) entries.push_back({static_cast<Symbol>(symbol), length});
  return PrefixCode::from_canonical(entries);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decode-time aware prefix code construction";

  py::register_exception<Error>(m, "DpfxError", PyExc_ValueError);

  py::class_<FrequencyTable>(m, "FrequencyTable")
      .def(py::init(&table_from_mapping), py::arg("counts"))
      .def_static("from_bytes", [](const py::bytes& data) {
        std::string raw = data;
        return io::histogram({reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
      })
      .def_static("from_csv", [](const std::string& text) { return io::parse_frequency_csv(text); })
      .def_static("from_json", [](const std::string& text) { return io::parse_frequency_json(text); })
      .def("__len__", &FrequencyTable::size)
      .def_property_readonly("total", &FrequencyTable::total)
      .def_property_readonly("freqs", [](const FrequencyTable& t) { return std::vector<Count>(t.freqs().begin(), t.freqs().end()); })
      .def_property_readonly("symbols", [](const FrequencyTable& t) { return std::vector<int>(t.symbols().begin(), t.symbols().end()); })
      .def("prefix_sums", [](const FrequencyTable& t) { return prefix_sums(t); });

  py::class_<BlockingScheme>(m, "BlockingScheme")
      .def(py::init([](const std::string& text) { return io::parse_blocking_scheme(text); }), py::arg("text"))
      .def_property_readonly("extend", &BlockingScheme::extend)
      .def_property_readonly("blocks", [](const BlockingScheme& s) {
        py::list out;
        for (const auto& b : s.blocks()) out.append(py::make_tuple(b.width, fraction(b.cost)));
        return out;
      })
      .def("hierarchy_count", [](const BlockingScheme& s) { return hierarchy_count(s); })
      .def("__str__", &BlockingScheme::to_string)
      .def("__repr__", [](const BlockingScheme& s) { return "BlockingScheme('" + s.to_string() + "')"; });

  m.def("huffman", [](const FrequencyTable& t) {
    auto result = huffman_dp(t);
    return py::make_tuple(result.codelength, result.shape.counts);
  }, "Optimal codelength and one optimal shape.");
  m.def("classic_huffman", &classic_huffman);
  m.def("validate_shape", [](const std::vector<std::int64_t>& shape, std::size_t n) { return validate_shape(TreeShape{shape}, n); });
  m.def("length_of_shape", [](const FrequencyTable& t, const std::vector<std::int64_t>& shape) {
    return len_from_shape(t, TreeShape{shape});
  });
  m.def("decode_time_of_shape", [](const FrequencyTable& t, const std::vector<std::int64_t>& shape, const BlockingScheme& s) {
    return fraction(decode_time_from_shape(t, TreeShape{shape}, s));
  });

  m.def("solve_exact", [](const FrequencyTable& t, const BlockingScheme& s, Count budget, std::optional<std::int64_t> height) {
    return solution_dict(solve_exact(t, s, budget, options_for(height)));
  }, py::arg("table"), py::arg("scheme"), py::arg("budget"), py::arg("height") = py::none());
  m.def("solve_fixed", [](const FrequencyTable& t, const BlockingScheme& s, Count budget) {
    return solution_dict(solve_fixed_block_levels(t, s, budget));
  }, py::arg("table"), py::arg("scheme"), py::arg("budget"));
  m.def("solve_approx", [](const FrequencyTable& t, const BlockingScheme& s, Count budget, const py::object& eps,
                           std::optional<std::int64_t> height) {
    return approx_dict(solve_pseudo_approx(t, s, budget, to_rational(eps), options_for(height)));
  }, py::arg("table"), py::arg("scheme"), py::arg("budget"), py::arg("epsilon"), py::arg("height") = py::none());
  m.def("solve_constant_hierarchy", [](const FrequencyTable& t, const BlockingScheme& s, Count budget,
                                       const py::object& eps, const py::object& delta) {
    return approx_dict(solve_constant_hierarchy(t, s, budget, to_rational(eps), to_rational(delta)));
  }, py::arg("table"), py::arg("scheme"), py::arg("budget"), py::arg("epsilon"), py::arg("delta"));

  m.def("optimize", [](const FrequencyTable& t, const BlockingScheme& s, const py::object& budget_factor,
                       std::optional<Count> budget, const std::string& algo, const py::object& eps, const py::object& delta) {
    RunConfig config;
    if (budget) {
      config.budget.absolute = *budget;
    } else {
      config.budget.factor = to_rational(budget_factor);
    }
    config.algorithm = parse_algorithm(algo);
    config.epsilon = to_rational(eps);
    config.delta = to_rational(delta);
    auto result = optimize(t, s, config);
    py::dict out = solution_dict(result.outcome.solution);
    out["huffman_length"] = result.baseline.huffman_length;
    out["huffman_decode_time"] = fraction(result.baseline.huffman_decode);
    out["speedup"] = fraction(result.speedup);
    out["relaxation"] = fraction(result.realized_relaxation);
    out["code"] = lengths_of(result.code);
    return out;
  }, py::arg("table"), py::arg("scheme"), py::arg("budget_factor") = "1", py::arg("budget") = py::none(),
     py::arg("algo") = "exact", py::arg("epsilon") = "0.05", py::arg("delta") = "0.25");

  m.def("build_code", [](const FrequencyTable& t, const std::vector<std::int64_t>& shape) {
    return lengths_of(build_tree_from_shape(t, TreeShape{shape}));
  }, "Canonical (symbol, length) pairs for a shape.");

  m.def("encode", [](const py::bytes& data, const std::vector<std::pair<int, int>>& code) {
    std::string raw = data;
    const auto* first = reinterpret_cast<const unsigned char*>(raw.data());
    std::vector<Symbol> symbols(first, first + raw.size());
    auto bytes = serialize(encode_stream(symbols, code_from_lengths(code)));
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }, py::arg("data"), py::arg("code"));
  m.def("decode", [](const py::bytes& container, const BlockingScheme& scheme) {
    std::string raw = container;
    auto parsed = parse_container({reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
    auto decoded = decode_stream(parsed, compile_tables(container_code(parsed), scheme));
    std::string out;
    out.reserve(decoded.symbols.size());
    for (Symbol s : decoded.symbols) {
      if (s > 255) throw Error(ErrorCode::kCorruptContainer, "decoded symbol does not fit a byte");
      out.push_back(static_cast<char>(s));
    }
    return py::make_tuple(py::bytes(out), fraction(measured_cost(decoded.meter, scheme)),
                          std::vector<std::uint64_t>(decoded.meter.accesses));
  }, py::arg("container"), py::arg("scheme"), "Returns (data, measured cost, accesses per block level).");

  m.def("enumerate_shapes", [](std::size_t n, std::int64_t h_max) {
    std::vector<std::vector<std::int64_t>> out;
    for (auto& s : oracle::enumerate_shapes(n, h_max)) out.push_back(std::move(s.counts));
    return out;
  });
  m.def("brute_force_optimal", [](const FrequencyTable& t, const BlockingScheme& s, Count budget, std::int64_t h_max) {
    auto best = oracle::brute_force_optimal(t, s, budget, h_max);
    return py::make_tuple(fraction(best.decode), best.shape.counts);
  });
  m.def("height_bound", [](std::int64_t n, std::int64_t k, const py::object& delta) {
    return height_bound(n, k, to_rational(delta));
  });
}
