#pragma once

#include "workbench/builtins.hpp"
#include "workbench/piecewise.hpp"
#include "workbench/translation.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace wb {

using Json = nlohmann::json;

struct RunOptions {
  std::uint64_t seed = 0;
  long long budget = 200'000'000;
  int threads = 0;
  std::string csv_path;
};

// Named objects declared by a scenario file. Spaces and ideals use 0-based
// points and sorted integer arrays; rationals are "p/q" strings.
class Scenario {
 public:
  Scenario() = default;
  static Scenario load_file(const std::string& path);
  static Scenario parse(const Json& doc);

  const FiniteSpace& space(const std::string& name) const;
  const IdealFamily& ideal(const std::string& name) const;
  GridPackPtr grid(const std::string& name) const;
  const SetValuedMap& map(const std::string& name) const;
  const MapUniverse& universe(const std::string& name) const;
  const GameSpec& game(const std::string& name) const;
  const TranslationPair& translation(const std::string& name) const;
  const DualityInstance& duality(const std::string& name) const;
  const Json& commands() const { return commands_; }

 private:
  std::map<std::string, FiniteSpace> spaces_;
  std::map<std::string, IdealFamily> ideals_;
  std::map<std::string, GridPackPtr> grids_;
  std::map<std::string, SetValuedMap> maps_;
  std::map<std::string, MapUniverse> universes_;
  std::map<std::string, GameSpec> games_;
  std::map<std::string, TranslationPair> translations_;
  std::map<std::string, DualityInstance> dualities_;
  Json commands_ = Json::object();

  void parse_impl(const Json& doc);
};

struct RunResult {
  Json report;
  int exit_code = 0;  // 0 ok, 2 validation, 3 budget, 4 counterexample found
};

// Executes one command against the scenario. Commands: solve, verify-duality,
// verify-translation, analyze-map, examples, cof.
RunResult run_command(const Scenario& scenario, const std::string& command,
                      const RunOptions& opts);

// --- JSON codecs shared with tests ------------------------------------------

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json mask_to_json(PointSet mask, int point_count);
PointSet mask_from_json(const Json& j, int point_count);
Json compact_set_to_json(const CompactSet& s);
Json domain_subset_to_json(const DomainSubset& s);
Json solve_report_to_json(const GameSpec& game, const SolveReport& rep);
SetValuedMap map_from_json(const Json& j);
Json map_to_json(const SetValuedMap& m);

}  // namespace wb
