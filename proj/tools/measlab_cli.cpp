// measlab: run the scenario catalog or scenario files and print verdict rows.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "measlab/error.hpp"
#include "measlab/scenario.hpp"

namespace {

struct Flags {
  double tol = 0.0;
  int n_max = 0;
  int resolution = -1;
  std::uint64_t seed = 0;
  std::string format = "csv";
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tol", f.tol, "relative tolerance of limit statements")->check(CLI::PositiveNumber);
  cmd->add_option("--n-max", f.n_max, "last sequence index")->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--resolution", f.resolution, "dyadic resolution of rings and families")->check(CLI::Range(0, 12));
  cmd->add_option("--seed", f.seed, "seed for random directions and probes");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

measlab::RunOptions options(const Flags& f, const CLI::App* cmd) {
  measlab::RunOptions o;
  if (cmd->count("--tol")) o.tol = f.tol;
  if (cmd->count("--n-max")) o.n_max = f.n_max;
  if (cmd->count("--resolution")) o.resolution = f.resolution;
  if (cmd->count("--seed")) o.seed = f.seed;
  return o;
}

int report(const std::vector<measlab::ReportRow>& rows, const std::string& format) {
  if (format == "json")
    std::cout << measlab::rows_to_json(rows).dump(2) << '\n';
  else
    std::cout << measlab::rows_to_csv(rows);
  int violated = 0;
  for (const auto& r : rows) {
    if (r.expectation_met()) continue;
    ++violated;
    std::cerr << "expectation violated: " << r.scenario << " / " << r.check << ": expected "
              << (r.expected ? measlab::to_string(*r.expected) : "no fault") << ", got "
              << measlab::to_string(r.status) << (r.fault ? " (fault: " + r.verdict.note + ")" : "") << '\n';
  }
  return violated == 0 ? 0 : 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw measlab::NotFound("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-prefix verification of convergence statements for varying measures"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list catalog scenarios with their expected verdicts");

  std::string describe_name;
  auto* describe = app.add_subcommand("describe", "print a catalog scenario as JSON");
  describe->add_option("name", describe_name)->required();

  Flags run_flags;
  std::vector<std::string> names;
  bool all = false;
  auto* run = app.add_subcommand("run", "run catalog scenarios");
  run->add_option("names", names, "scenario names");
  run->add_flag("--all", all, "run the whole catalog");
  add_run_flags(run, run_flags);

  Flags file_flags;
  std::vector<std::string> files;
  auto* check_file = app.add_subcommand("check-file", "validate and run scenario files");
  check_file->add_option("files", files)->required()->check(CLI::ExistingFile);
  add_run_flags(check_file, file_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& e : measlab::list_catalog()) {
        std::cout << e.name << "\t" << e.description << "\n";
        for (const auto& x : e.expectations) std::cout << "    " << x << "\n";
      }
      return 0;
    }
    if (describe->parsed()) {
      std::cout << measlab::describe(describe_name) << '\n';
      return 0;
    }
    if (run->parsed()) {
      std::vector<measlab::Scenario> chosen;
      if (all || names.empty()) {
        chosen = measlab::catalog();
      } else {
        for (const auto& n : names) chosen.push_back(measlab::catalog_scenario(n));
      }
      return report(measlab::run_all(chosen, options(run_flags, run)), run_flags.format);
    }
    if (check_file->parsed()) {
      std::vector<measlab::Scenario> chosen;
      for (const auto& f : files) {
        try {
          chosen.push_back(measlab::Scenario::parse(slurp(f)));
        } catch (const measlab::ParseError& e) {
          std::cerr << f << ": " << e.what() << '\n';
          return 2;
        }
      }
      return report(measlab::run_all(chosen, options(file_flags, check_file)), file_flags.format);
    }
  } catch (const measlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
