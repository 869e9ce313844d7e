#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "measlab/error.hpp"
#include "measlab/integration.hpp"
#include "measlab/json_io.hpp"
#include "measlab/recipe.hpp"
#include "measlab/scenario.hpp"
#include "measlab/verdict.hpp"

namespace py = pybind11;
using namespace measlab;
using nlohmann::json;

namespace {

RunOptions options(std::optional<double> tol, std::optional<int> n_max, std::optional<int> resolution,
                   std::optional<std::uint64_t> seed) {
  return RunOptions{tol, n_max, resolution, seed};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-measure convergence checks";

  auto& error = py::register_exception<Error>(m, "MeaslabError", PyExc_ValueError);
  py::register_exception<NotFound>(m, "NotFound", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DomainMismatch>(m, "DomainMismatch", error.ptr());

  py::enum_<Status>(m, "Status")
      .value("SUPPORTED", Status::Supported)
      .value("REFUTED", Status::Refuted)
      .value("INCONCLUSIVE", Status::Inconclusive);

  py::class_<Space>(m, "Space")
      .def_static("box", [](Point lo, Point hi) { return Space::box(std::move(lo), std::move(hi)); })
      .def_static("discrete", &Space::discrete)
      .def_static("from_json", [](const std::string& t) { return space_from_json(parse_json(t)); })
      .def_property_readonly("dimension", &Space::dimension)
      .def_property_readonly("is_discrete", &Space::is_discrete)
      .def("to_json", [](const Space& s) { return to_json(s).dump(); });

  py::class_<BorelSet>(m, "BorelSet")
      .def_static("half_open", &BorelSet::half_open)
      .def_static("whole", &BorelSet::whole)
      .def_static("points", [](const Space& s, const std::vector<Point>& p) { return BorelSet::points(s.dimension(), p); })
      .def("contains", &BorelSet::contains)
      .def("__repr__", &BorelSet::to_string);

  py::class_<FiniteMeasure>(m, "FiniteMeasure")
      .def_static("lebesgue", &FiniteMeasure::lebesgue, py::arg("space"), py::arg("scale") = 1.0)
      .def_static("dirac", &FiniteMeasure::dirac, py::arg("space"), py::arg("at"), py::arg("weight") = 1.0)
      .def_static("from_recipe",
                  [](const std::string& t, const Space& s) { return measure_from_recipe(parse_json(t), s); })
      .def_property_readonly("total_mass", &FiniteMeasure::total_mass)
      .def("__call__", &FiniteMeasure::evaluate);

  py::class_<ScalarFn>(m, "ScalarFn")
      .def_static("from_recipe",
                  [](const std::string& t, std::size_t d) { return function_from_recipe(parse_json(t), d); })
      .def("__call__", [](const ScalarFn& f, const Point& p) { return f(p); })
      .def("recipe", [](const ScalarFn& f) { return f.recipe().dump(); });

  m.def(
      "integrate",
      [](const ScalarFn& f, const FiniteMeasure& mu, const std::optional<BorelSet>& a) {
        const IntegralResult r = a ? integrate(f, mu, *a) : integrate(f, mu);
        return py::make_tuple(r.value, r.error);
      },
      py::arg("f"), py::arg("measure"), py::arg("over") = py::none(), "Returns (value, error bound).");

  m.def(
      "classify_trend",
      [](const std::vector<double>& errors, double tol, double scale) {
        const TrendResult t = classify_trend(errors, {tol, scale, 3, 8});
        py::dict d;
        d["status"] = t.status;
        d["final_mean"] = t.final_mean;
        d["limit"] = t.limit;
        d["basis"] = t.basis;
        return d;
      },
      py::arg("errors"), py::arg("tol") = 1e-6, py::arg("scale") = 1.0);

  m.def("known_checks", &known_checks);
  m.def("catalog", [] {
    py::list out;
    for (const auto& e : list_catalog()) {
      py::dict d;
      d["name"] = e.name;
      d["description"] = e.description;
      d["expectations"] = e.expectations;
      out.append(d);
    }
    return out;
  });
  m.def("describe", &describe);
  m.def(
      "run_json",
      [](const std::string& text, std::optional<double> tol, std::optional<int> n_max,
         std::optional<int> resolution, std::optional<std::uint64_t> seed) {
        const Scenario s = Scenario::parse(text);
        const RunOptions opt = options(tol, n_max, resolution, seed);
        py::gil_scoped_release release;
        return rows_to_json(run(s, opt)).dump();
      },
      py::arg("text"), py::arg("tol") = py::none(), py::arg("n_max") = py::none(),
      py::arg("resolution") = py::none(), py::arg("seed") = py::none());
}
