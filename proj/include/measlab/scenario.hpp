#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "measlab/convergence.hpp"
#include "measlab/multivalued.hpp"

namespace measlab {

/// One requested check. `expect` and `provenance` come together: an expected
/// verdict is always tagged "reference", "derived" or "trivial".
struct CheckSpec {
  std::string id;
  std::string check;
  std::optional<Status> expect;
  std::string provenance;
  nlohmann::json params = nlohmann::json::object();
};

/// Parsed and validated scenario file (schema 1).
///
///   {"schema": 1, "name": .., "description": .., "space": space, "n_max": N,
///    "measures": {"sequence": measure, "limit": measure},
///    "functions": {"sequence": function, "limit": function},           optional
///    "multifunctions": {"sequence": multifunction, "limit": ..},       optional
///    "config": {"tol": .., "resolution": .., "depth": .., ..},         optional
///    "checks": [{"check": .., "id": .., "expect": .., "provenance": .., "params": {..}}]}
///
/// Recipes may use the index n and the range end N in expression strings.
struct Scenario {
  std::string name;
  std::string description;
  int n_max = 64;
  nlohmann::json space;
  nlohmann::json measures;
  nlohmann::json functions;
  nlohmann::json multifunctions;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckSpec> checks;

  /// Throws ParseError; JSON syntax errors carry line and column.
  static Scenario parse(const std::string& text);
  static Scenario from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Command-line overrides applied on top of the scenario config.
struct RunOptions {
  std::optional<double> tol;
  std::optional<int> n_max;
  std::optional<int> resolution;
  std::optional<std::uint64_t> seed;
};

struct ReportRow {
  std::string scenario;
  std::string check;
  Status status = Status::Inconclusive;
  std::string witness;
  double final_error = 0.0;
  int n_max = 0;
  std::optional<Status> expected;
  std::string provenance;
  /// Set when the check raised; the message is in `verdict.note`.
  bool fault = false;
  Verdict verdict;

  bool expectation_met() const {
    if (fault) return !expected;
    return !expected || *expected == status;
  }
};

/// Runs every check, hypotheses before conclusions; rows come back sorted by
/// check id. A check that throws yields an INCONCLUSIVE row marked as fault.
std::vector<ReportRow> run(const Scenario& s, const RunOptions& opt = {});

/// Runs several scenarios concurrently; rows sorted by (scenario, check).
std::vector<ReportRow> run_all(const std::vector<Scenario>& scenarios, const RunOptions& opt = {});

bool expectations_met(const std::vector<ReportRow>& rows);

/// Columns: scenario, check, status, witness, final_error, n_max.
std::string rows_to_csv(const std::vector<ReportRow>& rows);
nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);

struct CatalogEntry {
  std::string name;
  std::string description;
  /// "check=EXPECT[provenance]" per expectation.
  std::vector<std::string> expectations;
};

std::vector<CatalogEntry> list_catalog();
/// Throws NotFound for an unknown name.
Scenario catalog_scenario(const std::string& name);
std::vector<Scenario> catalog();
/// Pretty-printed scenario JSON.
std::string describe(const std::string& name);

/// Check names understood by the runner.
const std::vector<std::string>& known_checks();

namespace detail {
/// (file name, text) of every bundled scenario, generated at build time.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_scenarios();
}  // namespace detail

}  // namespace measlab
