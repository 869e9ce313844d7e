#include "measlab/recipe.hpp"

#include <set>

#include "measlab/error.hpp"
#include "measlab/expr.hpp"
#include "measlab/json_io.hpp"
#include "measlab/test_functions.hpp"

namespace measlab {

using nlohmann::json;

namespace {

const std::set<std::string> kDescriptive = {"type", "label", "name", "description", "kind",
                                            "check", "id", "expect", "provenance", "note"};

json resolve_impl(const json& j, const std::map<std::string, double>& vars) {
  if (j.is_string()) {
    try {
      return evaluate_expression(j.get<std::string>(), vars);
    } catch (const ParseError&) {
      return j;
    }
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(resolve_impl(v, vars));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      out[it.key()] = kDescriptive.count(it.key()) ? it.value() : resolve_impl(it.value(), vars);
    return out;
  }
  return j;
}

std::string type_of(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ParseError(std::string(what) + " recipe needs a string \"type\": " + j.dump());
  return j.at("type").get<std::string>();
}

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number())
    throw ParseError(std::string("field \"") + key + "\" must be a number or an expression, got " + v.dump());
  return v.get<double>();
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\" in " + j.dump());
  return number(j, key, 0.0);
}

std::size_t axis_of(const json& j, std::size_t dimension) {
  const double a = number(j, "axis", 0.0);
  if (a < 0 || a != static_cast<double>(static_cast<std::size_t>(a)) || a >= static_cast<double>(dimension))
    throw ParseError("axis " + j.at("axis").dump() + " outside the space dimension " + std::to_string(dimension));
  return static_cast<std::size_t>(a);
}

ScalarFn function_impl(const json& j, std::size_t d) {
  const std::string type = type_of(j, "function");
  if (type == "const") return fn::constant(number(j, "value"));
  if (type == "affine") {
    auto coef = j.at("coef").get<std::vector<double>>();
    if (coef.size() != d) throw ParseError("affine coefficients do not match the space dimension");
    return fn::affine(std::move(coef), number(j, "offset", 0.0));
  }
  if (type == "coordinate") return fn::coordinate(axis_of(j, d), d);
  if (type == "indicator") return fn::indicator(box_from_json(j.at("box")), number(j, "value", 1.0));
  if (type == "power") return fn::power(axis_of(j, d), number(j, "exponent"), number(j, "scale", 1.0));
  if (type == "clip") return fn::clipped_coordinate(axis_of(j, d), number(j, "lo"), number(j, "hi"));
  if (type == "urysohn") return urysohn({box_from_json(j.at("K")), box_from_json(j.at("U"))});
  if (type == "point_indicator") return point_indicator(point_from_json(j.at("point")));
  if (type == "sum") {
    std::vector<ScalarFn> terms;
    for (const auto& t : j.at("terms")) terms.push_back(function_impl(t, d));
    return fn::sum(terms);
  }
  if (type == "product") {
    const auto& fs = j.at("factors");
    if (!fs.is_array() || fs.empty()) throw ParseError("product needs a nonempty factor list");
    ScalarFn out = function_impl(fs.at(0), d);
    for (std::size_t k = 1; k < fs.size(); ++k) out = fn::product(out, function_impl(fs.at(k), d));
    return out;
  }
  if (type == "scale") return fn::scaled(function_impl(j.at("arg"), d), number(j, "factor"));
  if (type == "abs") return fn::abs(function_impl(j.at("arg"), d));
  if (type == "pos_part") return pos_part(function_impl(j.at("arg"), d));
  if (type == "neg_part") return neg_part(function_impl(j.at("arg"), d));
  if (type == "opaque") throw ParseError("opaque functions cannot be rebuilt from a recipe");
  throw ParseError("unknown function type '" + type + "'");
}

FiniteMeasure measure_impl(const json& j, const Space& space) {
  const std::string type = type_of(j, "measure");
  if (type == "zero") return FiniteMeasure::zero(space);
  if (type == "lebesgue") return FiniteMeasure::lebesgue(space, number(j, "scale", 1.0));
  if (type == "dirac") return FiniteMeasure::dirac(space, point_from_json(j.at("at")), number(j, "weight", 1.0));
  if (type == "uniform") return FiniteMeasure::uniform(space, box_from_json(j.at("box")), number(j, "value"));
  if (type == "atoms") {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2) throw ParseError("an atom is [point, weight]");
      atoms.push_back({point_from_json(a.at(0)), a.at(1).get<double>()});
    }
    return FiniteMeasure(space, std::move(atoms), {});
  }
  if (type == "grid")
    return FiniteMeasure::grid(space, j.at("shape").get<std::vector<int>>(), j.at("values").get<std::vector<double>>());
  if (type == "sum") {
    FiniteMeasure out = FiniteMeasure::zero(space);
    for (const auto& t : j.at("terms")) out = out.add(measure_impl(t, space));
    return out;
  }
  if (type == "scale") return measure_impl(j.at("arg"), space).scale(number(j, "factor"));
  if (type == "restrict") return measure_impl(j.at("arg"), space).restrict(set_from_json(j.at("set"), space));
  throw ParseError("unknown measure type '" + type + "'");
}

template <typename F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad ") + what + " recipe: " + e.what());
  }
}

}  // namespace

json resolve_expressions(const json& j, int n, int n_max) {
  return resolve_impl(j, {{"n", static_cast<double>(n)}, {"N", static_cast<double>(n_max)}});
}

ScalarFn function_from_recipe(const json& j, std::size_t dimension) {
  return guarded("function", [&] { return function_impl(j, dimension); });
}

FiniteMeasure measure_from_recipe(const json& j, const Space& space) {
  return guarded("measure", [&] { return measure_impl(j, space); });
}

Multifunction multifunction_from_recipe(const json& j, std::size_t dimension) {
  return guarded("multifunction", [&] {
    if (!j.is_object()) throw ParseError("multifunction recipe must be an object");
    auto list = [&](const char* key) {
      std::vector<ScalarFn> out;
      for (const auto& f : j.at(key)) out.push_back(function_impl(f, dimension));
      return out;
    };
    if (j.contains("point")) {
      Multifunction g = Multifunction::single_valued(list("point"));
      if (j.contains("scalarly_continuous"))
        return Multifunction(g.lower(), g.upper(), j.at("scalarly_continuous").get<bool>());
      return g;
    }
    std::optional<bool> tag;
    if (j.contains("scalarly_continuous")) tag = j.at("scalarly_continuous").get<bool>();
    return Multifunction(list("lower"), list("upper"), tag);
  });
}

FunctionSequence function_sequence_from_recipe(const json& j, std::size_t dimension, int n_max) {
  function_from_recipe(resolve_expressions(j, 1, n_max), dimension);
  return FunctionSequence(
      [j, dimension, n_max](int n) { return function_from_recipe(resolve_expressions(j, n, n_max), dimension); },
      n_max);
}

MeasureSequence measure_sequence_from_recipe(const json& j, const Space& space, int n_max) {
  measure_from_recipe(resolve_expressions(j, 1, n_max), space);
  return MeasureSequence(
      space, [j, space, n_max](int n) { return measure_from_recipe(resolve_expressions(j, n, n_max), space); },
      n_max);
}

MultifunctionSequence multifunction_sequence_from_recipe(const json& j, std::size_t dimension, int n_max) {
  multifunction_from_recipe(resolve_expressions(j, 1, n_max), dimension);
  return MultifunctionSequence(
      [j, dimension, n_max](int n) {
        return multifunction_from_recipe(resolve_expressions(j, n, n_max), dimension);
      },
      n_max);
}

}  // namespace measlab
