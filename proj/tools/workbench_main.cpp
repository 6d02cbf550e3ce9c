#include "workbench/scenario.hpp"

#include "workbench/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"selection-game and set-valued analysis workbench"};

  std::string scenario_path;
  std::string command;
  std::uint64_t seed = 0;
  long long budget = 200'000'000;
  std::string out_path;
  std::string csv_path;

  app.add_option("--scenario", scenario_path, "scenario JSON path (optional for 'examples')");
  app.add_option("--command", command,
                 "one of: solve, verify-duality, verify-translation, analyze-map, examples, cof")
      ->required();
  app.add_option("--seed", seed, "seed recorded in the report");
  app.add_option("--budget", budget, "node budget for exhaustive searches");
  app.add_option("--out", out_path, "report output path (default: stdout)");
  app.add_option("--csv", csv_path, "CSV band-sample output path (analyze-map, examples)");

  CLI11_PARSE(app, argc, argv);

  wb::Scenario scenario;
  if (!scenario_path.empty()) {
    try {
      scenario = wb::Scenario::load_file(scenario_path);
    } catch (const wb::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  } else if (command != "examples") {
    std::cerr << "error: --scenario is required for command '" << command << "'\n";
    return 2;
  }

  wb::RunOptions opts;
  opts.seed = seed;
  opts.budget = budget;
  opts.csv_path = csv_path;

  wb::RunResult result = wb::run_command(scenario, command, opts);
  std::string text = result.report.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << text << "\n";
  }
  return result.exit_code;
}
