#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rhosk/bisim.hpp"
#include "rhosk/cli.hpp"
#include "rhosk/comb.hpp"
#include "rhosk/sorting.hpp"
#include "rhosk/syntax.hpp"

namespace py = pybind11;
using namespace rhosk;

namespace {

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

std::optional<std::string> sort_of(const std::string& term) {
  auto s = sort_infer(parse_comb(term));
  if (!s) return std::nullopt;
  return s->to_string();
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::bisimilar: return "bisimilar";
    case Verdict::distinguished: return "distinguished";
    default: return "inconclusive";
  }
}

}  // namespace

PYBIND11_MODULE(_rhosk, m) {
  py::register_exception<SyntaxError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BackinterpError>(m, "BackinterpError", PyExc_ValueError);

  m.def("run", &run, py::arg("args"),
        "Runs one CLI command line and returns (exit_code, stdout, stderr).");
  m.def("canon_process", [](const std::string& p) { return canon_process(parse_rho(p)).to_string(); });
  m.def("interp", [](const std::string& p) { return print_term(interp(parse_rho(p))); });
  m.def("backinterp", [](const std::string& c) { return backinterp(parse_comb(c)).to_string(); });
  m.def("sort", &sort_of, py::arg("term"), "Principal sort of a combinator term, or None.");
  m.def(
      "bisim",
      [](const std::string& a, const std::string& b, std::size_t depth) {
        Process p = parse_rho(a), q = parse_rho(b);
        return verdict_name(bounded_bisim(p, q, names_occurring({p, q}), depth).verdict);
      },
      py::arg("p"), py::arg("q"), py::arg("depth") = 4);
}
