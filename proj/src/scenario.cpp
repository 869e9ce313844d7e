#include "measlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "measlab/error.hpp"
#include "measlab/json_io.hpp"
#include "measlab/recipe.hpp"

namespace measlab {

using nlohmann::json;

namespace {

enum Needs : unsigned { kFnSeq = 1, kFnLimit = 2, kMfSeq = 4, kMfLimit = 8 };

struct CheckInfo {
  int rank;  // 0 = building block, 1 = theorem with a hypothesis battery
  unsigned needs;
};

const std::map<std::string, CheckInfo>& registry() {
  static const std::map<std::string, CheckInfo> r = {
      {"mass_convergence", {0, 0}},
      {"vague", {0, 0}},
      {"weak", {0, 0}},
      {"setwise", {0, 0}},
      {"uniform_abs_continuity", {0, 0}},
      {"uac_integrals", {0, kFnSeq}},
      {"uniform_integrability", {0, kFnSeq}},
      {"convergence_in_measure", {0, kFnSeq | kFnLimit}},
      {"uac_scalar_integrals", {0, kMfSeq}},
      {"scalar_integrability", {0, kMfLimit}},
      {"portmanteau", {1, 0}},
      {"ui_equivalence", {1, kFnSeq}},
      {"prop_pw", {1, 0}},
      {"prop_L4", {1, kFnLimit}},
      {"vitali", {1, kFnSeq | kFnLimit}},
      {"vitali_cb", {1, kFnSeq | kFnLimit}},
      {"vitali_pm", {1, kFnSeq | kFnLimit}},
      {"thm42", {1, kMfSeq | kMfLimit}},
      {"cor43", {1, kMfSeq | kMfLimit}},
      {"prop44", {1, kMfSeq | kMfLimit}},
      {"cor45", {1, kMfSeq | kMfLimit}},
  };
  return r;
}

const std::set<std::string> kProvenance = {"reference", "derived", "trivial"};

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ParseError("scenario " + path + ": " + what);
}

void apply_config(CheckConfig& cfg, const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    auto num = [&] {
      if (!v.is_number()) invalid(path + "." + k, "must be a number");
      return v.get<double>();
    };
    auto integer = [&] {
      if (!v.is_number_integer()) invalid(path + "." + k, "must be an integer");
      return v.get<int>();
    };
    auto list = [&] {
      if (!v.is_array()) invalid(path + "." + k, "must be an array of numbers");
      std::vector<double> out;
      for (const auto& x : v) {
        if (!x.is_number()) invalid(path + "." + k, "must be an array of numbers");
        out.push_back(x.get<double>());
      }
      return out;
    };
    if (k == "tol") cfg.tol = num();
    else if (k == "resolution") cfg.resolution = integer();
    else if (k == "depth") cfg.quad.depth = integer();
    else if (k == "quad_tolerance") cfg.quad.tolerance = num();
    else if (k == "superlevel_depth_cap") cfg.quad.superlevel_depth_cap = integer();
    else if (k == "eps_grid") cfg.eps_grid = list();
    else if (k == "alpha_grid") cfg.alpha_grid = list();
    else if (k == "windows") cfg.windows = integer();
    else if (k == "window_divisor") cfg.window_divisor = integer();
    else if (k == "zero_tol") cfg.zero_tol = num();
    else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(integer());
    else if (k == "random_directions") cfg.random_directions = integer();
    else if (k == "eps") continue;  // per-check parameter of convergence_in_measure
    else invalid(path + "." + k, "unknown configuration key");
  }
}

/// Every object a scenario refers to, built at a given index range.
struct Instance {
  Space space;
  MeasureSequence seq;
  FiniteMeasure m;
  std::optional<FunctionSequence> fseq;
  std::optional<ScalarFn> f;
  std::optional<MultifunctionSequence> gseq;
  std::optional<Multifunction> g;
};

Instance build(const Scenario& s, int n_max) {
  Space space = space_from_json(resolve_expressions(s.space, 0, n_max));
  const std::size_t d = space.dimension();
  Instance in{space, measure_sequence_from_recipe(s.measures.at("sequence"), space, n_max),
              measure_from_recipe(resolve_expressions(s.measures.at("limit"), 0, n_max), space),
              {}, {}, {}, {}};
  if (s.functions.contains("sequence"))
    in.fseq = function_sequence_from_recipe(s.functions.at("sequence"), d, n_max);
  if (s.functions.contains("limit"))
    in.f = function_from_recipe(resolve_expressions(s.functions.at("limit"), 0, n_max), d);
  if (s.multifunctions.contains("sequence"))
    in.gseq = multifunction_sequence_from_recipe(s.multifunctions.at("sequence"), d, n_max);
  if (s.multifunctions.contains("limit"))
    in.g = multifunction_from_recipe(resolve_expressions(s.multifunctions.at("limit"), 0, n_max), d);
  return in;
}

Verdict dispatch(const std::string& name, const Instance& in, const CheckConfig& cfg, const json& params) {
  if (name == "mass_convergence") return mass_convergence_check(in.seq, in.m, cfg);
  if (name == "vague") return vague_check(in.seq, in.m, cfg);
  if (name == "weak") return weak_check(in.seq, in.m, cfg);
  if (name == "setwise") return setwise_check(in.seq, in.m, cfg);
  if (name == "uniform_abs_continuity") return uniform_abs_continuity(in.seq, in.m, cfg).as_verdict();
  if (name == "uac_integrals") return uac_integrals(*in.fseq, in.seq, cfg).as_verdict();
  if (name == "uniform_integrability") return uniform_integrability(*in.fseq, in.seq, cfg);
  if (name == "convergence_in_measure")
    return convergence_in_measure_check(*in.fseq, *in.f, in.m, params.value("eps", 1e-3), cfg);
  if (name == "uac_scalar_integrals") return uac_scalar_integrals(*in.gseq, in.seq, cfg).as_verdict();
  if (name == "scalar_integrability")
    return scalar_integrability_report(*in.g, in.m, directions(in.g->dimension(), cfg.random_directions, cfg.seed),
                                       cfg.quad)
        .as_verdict("scalar_integrability");
  if (name == "portmanteau") return portmanteau_check(in.seq, in.m, cfg);
  if (name == "ui_equivalence") return ui_equivalence_check(*in.fseq, in.seq, cfg);
  if (name == "prop_pw") return prop_pw_verify(in.seq, in.m, cfg);
  if (name == "prop_L4") return prop_L4_verify(in.seq, in.m, *in.f, cfg);
  if (name == "vitali") return vitali_verify(*in.fseq, *in.f, in.seq, in.m, cfg);
  if (name == "vitali_cb") return vitali_cb_verify(*in.fseq, *in.f, in.seq, in.m, cfg);
  if (name == "vitali_pm") return vitali_pm_verify(*in.fseq, *in.f, in.seq, in.m, cfg);
  if (name == "thm42" || name == "cor43" || name == "prop44" || name == "cor45") {
    const bool single = name == "cor43" || name == "cor45";
    if (single && (!in.g->is_single_valued() || !in.gseq->at(1).is_single_valued()))
      throw InvalidArgument(name + " needs single-valued multifunctions ({\"point\": [..]} recipes)");
    Verdict v = name == "thm42" || name == "cor43" ? thm42_verify(*in.gseq, *in.g, in.seq, in.m, cfg)
                                                   : prop44_verify(*in.gseq, *in.g, in.seq, in.m, cfg);
    v.check = name;
    return v;
  }
  throw InvalidArgument("unknown check '" + name + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json number_json(double x) { return std::isfinite(x) ? json(x) : json(format_number(x)); }

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

Scenario Scenario::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what(), line, column);
  }
  return from_json(j);
}

Scenario Scenario::from_json(const json& j) {
  if (!j.is_object()) invalid("root", "must be an object");
  if (!j.contains("schema") || j.at("schema") != 1) invalid("schema", "must be 1");
  static const std::set<std::string> keys = {"schema",    "name",      "description",    "space", "n_max",
                                             "measures",  "functions", "multifunctions", "config", "checks"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) invalid(it.key(), "unknown top-level key");

  Scenario s;
  if (!j.contains("name") || !j.at("name").is_string() || j.at("name").get<std::string>().empty())
    invalid("name", "must be a nonempty string");
  s.name = j.at("name").get<std::string>();
  if (j.contains("description")) {
    if (!j.at("description").is_string()) invalid("description", "must be a string");
    s.description = j.at("description").get<std::string>();
  }
  if (j.contains("n_max")) {
    if (!j.at("n_max").is_number_integer() || j.at("n_max").get<int>() < 1) invalid("n_max", "must be an integer >= 1");
    s.n_max = j.at("n_max").get<int>();
  }
  if (!j.contains("space")) invalid("space", "missing");
  s.space = j.at("space");
  if (!j.contains("measures") || !j.at("measures").contains("sequence") || !j.at("measures").contains("limit"))
    invalid("measures", "needs \"sequence\" and \"limit\"");
  s.measures = j.at("measures");
  s.functions = j.value("functions", json::object());
  s.multifunctions = j.value("multifunctions", json::object());
  s.config = j.value("config", json::object());
  CheckConfig probe;
  apply_config(probe, s.config, "config");

  unsigned have = 0;
  if (s.functions.contains("sequence")) have |= kFnSeq;
  if (s.functions.contains("limit")) have |= kFnLimit;
  if (s.multifunctions.contains("sequence")) have |= kMfSeq;
  if (s.multifunctions.contains("limit")) have |= kMfLimit;

  std::set<std::string> ids;
  const json checks = j.value("checks", json::array());
  if (!checks.is_array()) invalid("checks", "must be an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string path = "checks[" + std::to_string(i) + "]";
    const json& c = checks[i];
    if (!c.is_object() || !c.contains("check") || !c.at("check").is_string())
      invalid(path, "needs a string \"check\"");
    CheckSpec spec;
    spec.check = c.at("check").get<std::string>();
    auto info = registry().find(spec.check);
    if (info == registry().end()) invalid(path, "unknown check '" + spec.check + "'");
    if ((info->second.needs & have) != info->second.needs)
      invalid(path, "'" + spec.check + "' needs objects the scenario does not define");
    spec.id = c.value("id", spec.check);
    if (!ids.insert(spec.id).second) invalid(path, "duplicate check id '" + spec.id + "'");
    if (c.contains("expect")) {
      try {
        spec.expect = parse_status(c.at("expect").get<std::string>());
      } catch (const std::exception& e) {
        invalid(path + ".expect", e.what());
      }
      spec.provenance = c.value("provenance", "");
      if (!kProvenance.count(spec.provenance))
        invalid(path + ".provenance", "an expectation needs provenance reference, derived or trivial");
    } else if (c.contains("provenance")) {
      invalid(path + ".provenance", "provenance without an expectation");
    }
    spec.params = c.value("params", json::object());
    CheckConfig pc;
    apply_config(pc, spec.params, path + ".params");
    s.checks.push_back(std::move(spec));
  }
  try {
    build(s, s.n_max).seq.at(1);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    invalid("objects", e.what());
  }
  return s;
}

json Scenario::to_json() const {
  json j{{"schema", 1}, {"name", name}, {"n_max", n_max}, {"space", space}, {"measures", measures}};
  if (!description.empty()) j["description"] = description;
  if (!functions.empty()) j["functions"] = functions;
  if (!multifunctions.empty()) j["multifunctions"] = multifunctions;
  if (!config.empty()) j["config"] = config;
  json cs = json::array();
  for (const auto& c : checks) {
    json x{{"check", c.check}};
    if (c.id != c.check) x["id"] = c.id;
    if (c.expect) {
      x["expect"] = to_string(*c.expect);
      x["provenance"] = c.provenance;
    }
    if (!c.params.empty()) x["params"] = c.params;
    cs.push_back(std::move(x));
  }
  j["checks"] = cs;
  return j;
}

std::vector<ReportRow> run(const Scenario& s, const RunOptions& opt) {
  const int n_max = opt.n_max.value_or(s.n_max);
  CheckConfig base;
  apply_config(base, s.config, "config");
  if (opt.tol) base.tol = *opt.tol;
  if (opt.resolution) base.resolution = *opt.resolution;
  if (opt.seed) base.seed = *opt.seed;

  std::vector<const CheckSpec*> order;
  for (const auto& c : s.checks) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const CheckSpec* a, const CheckSpec* b) {
    return registry().at(a->check).rank < registry().at(b->check).rank;
  });

  std::vector<ReportRow> rows;
  if (order.empty()) return rows;
  std::optional<Instance> in;
  std::string build_error;
  try {
    in = build(s, n_max);
  } catch (const std::exception& e) {
    build_error = e.what();
  }
  for (const CheckSpec* c : order) {
    ReportRow row;
    row.scenario = s.name;
    row.check = c->id;
    row.n_max = n_max;
    row.expected = c->expect;
    row.provenance = c->provenance;
    try {
      if (!in) throw Error(build_error);
      CheckConfig cfg = base;
      apply_config(cfg, c->params, "params");
      if (opt.tol) cfg.tol = *opt.tol;
      if (opt.resolution) cfg.resolution = *opt.resolution;
      row.verdict = dispatch(c->check, *in, cfg, c->params);
    } catch (const std::exception& e) {
      row.fault = true;
      row.verdict.check = c->check;
      row.verdict.status = Status::Inconclusive;
      row.verdict.basis = "fault";
      row.verdict.note = e.what();
    }
    row.status = row.verdict.status;
    row.witness = row.verdict.witness ? row.verdict.witness->to_string() : "";
    row.final_error = row.verdict.final_error;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.check < b.check; });
  return rows;
}

std::vector<ReportRow> run_all(const std::vector<Scenario>& scenarios, const RunOptions& opt) {
  std::vector<std::future<std::vector<ReportRow>>> jobs;
  for (const auto& s : scenarios) jobs.push_back(std::async(std::launch::async, [&s, &opt] { return run(s, opt); }));
  std::vector<ReportRow> rows;
  for (auto& j : jobs) {
    auto part = j.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.scenario, a.check) < std::tie(b.scenario, b.check);
  });
  return rows;
}

bool expectations_met(const std::vector<ReportRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.expectation_met(); });
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "scenario,check,status,witness,final_error,n_max\n";
  for (const auto& r : rows)
    out << csv_field(r.scenario) << ',' << csv_field(r.check) << ',' << to_string(r.status) << ','
        << csv_field(r.witness) << ',' << format_number(r.final_error) << ',' << r.n_max << '\n';
  return out.str();
}

json rows_to_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json j{{"scenario", r.scenario},
           {"check", r.check},
           {"status", to_string(r.status)},
           {"witness", r.witness},
           {"final_error", number_json(r.final_error)},
           {"n_max", r.n_max},
           {"verdict", r.verdict.to_json()}};
    if (r.expected) {
      j["expected"] = to_string(*r.expected);
      j["provenance"] = r.provenance;
      j["expectation_met"] = r.expectation_met();
    }
    if (r.fault) j["fault"] = true;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Scenario> catalog() {
  std::vector<Scenario> out;
  for (const auto& [file, text] : detail::embedded_scenarios()) {
    try {
      out.push_back(Scenario::parse(std::string(text)));
    } catch (const ParseError& e) {
      throw ParseError("bundled scenario " + std::string(file) + ": " + e.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  return out;
}

std::vector<CatalogEntry> list_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& s : catalog()) {
    CatalogEntry e{s.name, s.description, {}};
    for (const auto& c : s.checks)
      if (c.expect) e.expectations.push_back(c.id + "=" + to_string(*c.expect) + "[" + c.provenance + "]");
    out.push_back(std::move(e));
  }
  return out;
}

Scenario catalog_scenario(const std::string& name) {
  for (auto& s : catalog())
    if (s.name == name) return s;
  throw NotFound("no catalog scenario named '" + name + "'");
}

std::string describe(const std::string& name) { return catalog_scenario(name).to_json().dump(2); }

}  // namespace measlab
