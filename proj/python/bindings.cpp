#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hesse/cone.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/report.hpp"
#include "hesse/suites.hpp"

namespace py = pybind11;
using namespace hesse;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(rational_string(r));
}

Rational from_py(const py::handle& v) { return parse_rational(py::str(v).cast<std::string>()); }

HessianMode hessian_mode(const std::string& name) {
  if (name == "symbolic") return HessianMode::symbolic;
  if (name == "probabilistic") return HessianMode::probabilistic;
  throw std::invalid_argument("mode must be 'symbolic' or 'probabilistic'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact polynomial tools for vanishing-Hessian hypersurfaces";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ReportError>(m, "ReportError", PyExc_ValueError);
  py::register_exception<RetriesExhausted>(m, "RetriesExhausted", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GNValidationError& e) {
      std::string msg;
      for (const auto& v : e.violations()) msg += (msg.empty() ? "" : "; ") + v;
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });

  py::class_<Poly>(m, "Poly")
      .def(py::init([](const std::string& text, std::size_t nvars, const std::string& prefix) {
             return parse(text, prefix, nvars);
           }),
           py::arg("text"), py::arg("nvars") = 1, py::arg("prefix") = "x")
      .def_property_readonly("nvars", &Poly::nvars)
      .def_property_readonly("degree", [](const Poly& p) { return p.degree(); })
      .def("is_zero", &Poly::is_zero)
      .def("is_homogeneous", &Poly::is_homogeneous)
      .def("partial", [](const Poly& p, std::size_t i) { return partial(p, i); })
      .def("gradient", [](const Poly& p) { return gradient(p); })
      .def("evaluate",
           [](const Poly& p, const py::sequence& point) {
             std::vector<Rational> x;
             for (auto v : point) x.push_back(from_py(v));
             return fraction(evaluate(p, std::span<const Rational>(x)));
           })
      .def("to_string", [](const Poly& p, const std::string& prefix) { return to_string(p, prefix); },
           py::arg("prefix") = "x")
      .def("__str__", [](const Poly& p) { return to_string(p); })
      .def("__repr__", [](const Poly& p) { return "Poly('" + to_string(p) + "', nvars=" + std::to_string(p.nvars()) + ")"; })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
      .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
      .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; });

  m.def("hessian_vanishes",
        [](const Poly& f, const std::string& mode, int trials, std::uint64_t seed) {
          return to_py(hessian_to_json(hessian_vanishes(f, hessian_mode(mode), trials, seed)));
        },
        py::arg("f"), py::arg("mode") = "symbolic", py::arg("trials") = kDefaultTrials, py::arg("seed") = 0);

  m.def("vertex", [](const Poly& f) {
    py::list basis;
    for (const auto& v : cone_test(f).basis) {
      py::list vec;
      for (const auto& x : v) vec.append(fraction(x));
      basis.append(vec);
    }
    return basis;
  }, "Basis of the vertex subspace; empty unless V(f) is a cone.");

  m.def("polar_image_dim", [](const Poly& f, int samples, std::uint64_t seed) { return polar_image_dim(f, samples, seed); },
        py::arg("f"), py::arg("samples") = kDefaultRankSamples, py::arg("seed") = 0);

  m.def("find_polar_relation",
        [](const Poly& f, int max_degree) -> py::object {
          auto r = find_polar_relation(f, max_degree);
          return r ? to_py(relation_to_json(*r)) : py::none();
        },
        py::arg("f"), py::arg("max_degree") = kDefaultRelationDegree);

  m.def("analyze",
        [](const Poly& f, std::uint64_t seed, bool symbolic) {
          AnalyzeOptions o;
          o.seed = seed;
          o.force_symbolic = symbolic;
          auto r = analyze(f, o);
          Json out = r.results;
          out["violation"] = r.violation;
          return to_py(out);
        },
        py::arg("f"), py::arg("seed") = 0, py::arg("symbolic") = false);

  m.def("gn_instance",
        [](int n, int t, int m_, int hdeg, int psideg, int d, std::uint64_t seed, bool reject_cones) {
          GNRandomOptions o;
          o.reject_cones = reject_cones;
          return to_py(gn_instance_to_json(random_instance({n, t, m_, hdeg, psideg, d}, seed, o)));
        },
        py::arg("n"), py::arg("t"), py::arg("m"), py::arg("hdeg"), py::arg("psideg"), py::arg("d"),
        py::arg("seed") = 0, py::arg("reject_cones") = true);

  m.def("run_suite",
        [](const std::string& name, std::uint64_t seed, std::optional<std::size_t> count, bool corrupt_psi) {
          SuiteOptions o;
          o.seed = seed;
          o.count = count;
          o.corrupt_psi = corrupt_psi;
          auto r = run_suite(name, o);
          return py::make_tuple(r.passed, to_py(r.results));
        },
        py::arg("name"), py::arg("seed") = 0, py::arg("count") = py::none(), py::arg("corrupt_psi") = false);
}
