#include "measlab/json_io.hpp"

#include "measlab/error.hpp"

namespace measlab {

using nlohmann::json;

namespace {

std::vector<bool> bool_array(const json& j, const char* key, std::size_t n, bool def) {
  if (!j.contains(key)) return std::vector<bool>(n, def);
  auto v = j.at(key).get<std::vector<bool>>();
  if (v.size() != n) throw ParseError(std::string("'") + key + "' has the wrong length");
  return v;
}

}  // namespace

Point point_from_json(const json& j) {
  if (j.is_number()) return Point{j.get<double>()};
  if (!j.is_array()) throw ParseError("a point must be a number or an array of numbers");
  return j.get<Point>();
}

json to_json(const Box& b) {
  json j;
  j["lower"] = b.lower();
  j["upper"] = b.upper();
  std::vector<bool> lc, uc;
  for (const auto& s : b.sides()) {
    lc.push_back(s.lo_closed);
    uc.push_back(s.hi_closed);
  }
  j["lower_closed"] = lc;
  j["upper_closed"] = uc;
  return j;
}

Box box_from_json(const json& j) {
  try {
    Point lo = point_from_json(j.at("lower"));
    Point hi = point_from_json(j.at("upper"));
    if (lo.size() != hi.size() || lo.empty()) throw ParseError("box corners must match in dimension");
    auto lc = bool_array(j, "lower_closed", lo.size(), true);
    auto uc = bool_array(j, "upper_closed", lo.size(), false);
    std::vector<Interval> sides;
    for (std::size_t i = 0; i < lo.size(); ++i) sides.push_back({lo[i], hi[i], lc[i], uc[i]});
    return Box(std::move(sides));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad box literal: ") + e.what());
  }
}

json to_json(const Space& s) {
  json j;
  if (s.is_box()) {
    j["kind"] = "box";
    j["lower"] = s.bounds().lower();
    j["upper"] = s.bounds().upper();
    if (s.any_truncated()) j["truncated"] = s.truncated_axes();
  } else {
    j["kind"] = "discrete";
    j["points"] = s.points();
  }
  return j;
}

Space space_from_json(const json& j) {
  try {
    const std::string kind = j.value("kind", "box");
    if (kind == "box") {
      Point lo = point_from_json(j.at("lower"));
      Point hi = point_from_json(j.at("upper"));
      std::vector<bool> tr;
      if (j.contains("truncated")) tr = j.at("truncated").get<std::vector<bool>>();
      return Space::box(lo, hi, tr);
    }
    if (kind == "discrete") {
      std::vector<Point> pts;
      for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
      return Space::discrete(std::move(pts));
    }
    throw ParseError("unknown space kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad space literal: ") + e.what());
  }
}

json to_json(const BorelSet& s) {
  json boxes = json::array();
  for (const auto& b : s.boxes()) boxes.push_back(to_json(b));
  return json{{"boxes", boxes}};
}

BorelSet set_from_json(const json& j, const Space& space) {
  try {
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "omega" || s == "whole") return BorelSet::whole(space);
      if (s == "empty") return BorelSet(space.dimension());
      throw ParseError("unknown set name '" + s + "'");
    }
    std::vector<Box> boxes;
    if (j.contains("boxes"))
      for (const auto& b : j.at("boxes")) boxes.push_back(box_from_json(b));
    BorelSet set = BorelSet::from_boxes(space.dimension(), boxes);
    std::vector<Point> inc, exc;
    if (j.contains("include"))
      for (const auto& p : j.at("include")) inc.push_back(point_from_json(p));
    if (j.contains("exclude"))
      for (const auto& p : j.at("exclude")) exc.push_back(point_from_json(p));
    if (!inc.empty() || !exc.empty()) set = set.with_overrides(inc, exc);
    return set;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad set literal: ") + e.what());
  }
}

json to_json(const FiniteMeasure& m) {
  json j;
  j["space"] = to_json(m.space());
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back(json::array({a.point, a.weight}));
  j["atoms"] = atoms;
  json grid = json::array();
  json values = json::array();
  for (const auto& p : m.density()) {
    grid.push_back(to_json(p.box));
    values.push_back(p.value);
  }
  j["density"] = json{{"grid", grid}, {"values", values}};
  return j;
}

FiniteMeasure measure_from_json(const json& j) {
  try {
    Space space = space_from_json(j.at("space"));
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
      for (const auto& a : j.at("atoms")) {
        if (!a.is_array() || a.size() != 2) throw ParseError("an atom is [point, weight]");
        atoms.push_back({point_from_json(a.at(0)), a.at(1).get<double>()});
      }
    }
    FiniteMeasure m(space, std::move(atoms), {});
    if (j.contains("density")) {
      const auto& d = j.at("density");
      const auto& grid = d.at("grid");
      auto values = d.at("values").get<std::vector<double>>();
      if (grid.is_object()) {
        m = m.add(FiniteMeasure::grid(space, grid.at("shape").get<std::vector<int>>(), values));
      } else {
        if (grid.size() != values.size()) throw ParseError("density grid and values differ in length");
        std::vector<DensityPiece> pieces;
        for (std::size_t i = 0; i < grid.size(); ++i)
          pieces.push_back({box_from_json(grid[i]), values[i]});
        m = m.add(FiniteMeasure(space, {}, std::move(pieces)));
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad measure literal: ") + e.what());
  }
}

}  // namespace measlab
