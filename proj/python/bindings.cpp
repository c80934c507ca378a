#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "endo/cli.hpp"
#include "endo/document.hpp"
#include "endo/error.hpp"
#include "endo/localfield.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

endo::CliOptions options(bool trace, bool json, std::optional<int> precision) {
  endo::CliOptions opt;
  opt.trace = trace;
  opt.json = json;
  opt.precision = precision;
  return opt;
}

// Q_p for a prime p, R for None.
endo::TowerPtr ground(std::optional<long> p) {
  return endo::Tower::trivial(p ? endo::BaseField::padic(*p) : endo::BaseField::real());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transfer factors for classical groups over p-adic fields and R";

  py::register_exception<endo::Error>(m, "EndoError", PyExc_ValueError);

  py::class_<endo::CommandResult>(m, "CommandResult")
      .def_readonly("exit_code", &endo::CommandResult::exit_code)
      .def_readonly("output", &endo::CommandResult::output)
      .def("__repr__", [](const endo::CommandResult& r) {
        return "CommandResult(exit_code=" + std::to_string(r.exit_code) + ")";
      });

  m.attr("EXIT_OK") = endo::kExitOk;
  m.attr("EXIT_INVALID") = endo::kExitInvalid;
  m.attr("EXIT_ARITHMETIC") = endo::kExitArithmetic;
  m.attr("EXIT_PARSE") = endo::kExitParse;

  // Commands take the document text; the *_file forms take a path.
  m.def(
      "validate",
      [](const std::string& doc, bool json) { return endo::cmd_validate_text(doc, options(false, json, std::nullopt)); },
      "document"_a, py::kw_only(), "json"_a = false);
  m.def(
      "validate_file",
      [](const std::string& path, bool json) { return endo::cmd_validate(path, options(false, json, std::nullopt)); },
      "path"_a, py::kw_only(), "json"_a = false);
  m.def(
      "compute",
      [](const std::string& doc, bool trace, bool json, std::optional<int> precision) {
        return endo::cmd_compute_text(doc, options(trace, json, precision));
      },
      "document"_a, py::kw_only(), "trace"_a = false, "json"_a = false, "precision"_a = py::none());
  m.def(
      "compute_file",
      [](const std::string& path, bool trace, bool json, std::optional<int> precision) {
        return endo::cmd_compute(path, options(trace, json, precision));
      },
      "path"_a, py::kw_only(), "trace"_a = false, "json"_a = false, "precision"_a = py::none());
  m.def(
      "check",
      [](const std::string& doc, bool json) { return endo::cmd_check_text(doc, options(false, json, std::nullopt)); },
      "document"_a, py::kw_only(), "json"_a = false);
  m.def(
      "oracle",
      [](long p, const std::string& delta, const std::string& value, int depth) {
        endo::CliOptions opt;
        opt.depth = depth;
        return endo::cmd_oracle(p, delta, value, opt);
      },
      "p"_a, "delta"_a, "value"_a, "depth"_a = 3);

  m.def(
      "normalize_document",
      [](const std::string& doc) { return endo::serialize_document(endo::parse_document(doc)); }, "document"_a,
      "Parse a document and write it back with every default made explicit.");

  m.def(
      "hilbert_symbol",
      [](std::optional<long> p, const std::string& a, const std::string& b) {
        auto t = ground(p);
        return endo::hilbert_symbol(endo::parse_field_literal(a, t), endo::parse_field_literal(b, t));
      },
      "p"_a, "a"_a, "b"_a, "(a, b) over Q_p, or over R when p is None. Arguments are element literals.");
  m.def(
      "square_class",
      [](std::optional<long> p, const std::string& a) {
        auto t = ground(p);
        return endo::describe(endo::square_class(endo::parse_field_literal(a, t)), *t);
      },
      "p"_a, "a"_a);
}
