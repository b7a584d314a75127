#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qpencil/cli.hpp"
#include "qpencil/error.hpp"
#include "qpencil/io.hpp"

namespace py = pybind11;
using namespace qpencil;

namespace {

// Python ints and strings both cross as decimal text.
Rational rational_arg(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

py::list ints(const std::vector<Integer>& v) {
  py::list out;
  for (const auto& x : v) out.append(py::int_(py::str(x.get_str())));
  return out;
}

}  // namespace

PYBIND11_MODULE(_qpencil, m) {
  m.doc() = "Rational points on intersections of two quadrics containing a conic";

  static py::exception<Error> error(m, "QpencilError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "find_point",
      [](const std::string& instance, unsigned height_bound, std::uint64_t prime_budget) {
        const Instance inst = parse_instance(instance);
        SearchConfig cfg;
        cfg.height_bound = height_bound;
        cfg.prime_budget = prime_budget;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = find_rational_point(inst.F, inst.G, inst.plane, cfg);
        }
        return canonical_dump(to_json(r));
      },
      py::arg("instance"), py::arg("height_bound") = 50, py::arg("prime_budget") = 2'000'000,
      "Search for a rational point; takes instance JSON text and returns result JSON text.");

  m.def(
      "validate_instance", [](const std::string& text) { return canonical_dump(instance_to_json(parse_instance(text))); },
      py::arg("instance"), "Validate instance JSON text and return its canonical form.");

  m.def(
      "replay",
      [](const std::string& report) {
        const ReplayReport rr = replay_report(Json::parse(report));
        return py::make_tuple(rr.ok, rr.mismatches);
      },
      py::arg("report"), "Re-verify a find-point report; returns (ok, mismatches).");

  m.def(
      "hilbert_symbol",
      [](const py::object& a, const py::object& b, const py::object& p) {
        const Place v = p.is_none() ? Place::real() : Place::prime(Integer(py::str(p).cast<std::string>()));
        return hilbert_symbol(rational_arg(a), rational_arg(b), v);
      },
      py::arg("a"), py::arg("b"), py::arg("p") = py::none(),
      "(a, b)_p for a prime p, or at the real place when p is None.");

  m.def(
      "conic_point",
      [](const py::object& a, const py::object& b, const py::object& c) -> py::object {
        QMatrix g(3, 3);
        g(0, 0) = rational_arg(a);
        g(1, 1) = rational_arg(b);
        g(2, 2) = rational_arg(c);
        const TernaryForm t = TernaryForm::from_form(QuadraticForm(g));
        if (!conic_local_report(t).globally_solvable) return py::none();
        return ints(conic_rational_point(t).coords());
      },
      py::arg("a"), py::arg("b"), py::arg("c"),
      "A primitive integer zero of a x^2 + b y^2 + c z^2, or None if there is none.");

  m.attr("EXIT_OK") = static_cast<int>(kExitOk);
  m.attr("EXIT_OBSTRUCTION") = static_cast<int>(kExitObstruction);
  m.attr("EXIT_EXHAUSTED") = static_cast<int>(kExitExhausted);
  m.attr("EXIT_INVALID") = static_cast<int>(kExitInvalid);
  m.attr("EXIT_INTERNAL") = static_cast<int>(kExitInternal);
  m.attr("EXIT_MISMATCH") = static_cast<int>(kExitMismatch);
}
