#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/errors.hpp"
#include "workbench/scenario.hpp"

#include <cstdio>
#include <fstream>

using namespace wb;

namespace {

Json base_scenario() {
  return Json::parse(R"({
    "spaces": {
      "X": { "points": 2, "opens": [[], [0], [1], [0, 1]] }
    },
    "ideals": {
      "A": { "space": "X", "members": [[0], [1]] }
    },
    "grids": {
      "G": { "space": "X", "values": ["-1", "0", "1"] }
    },
    "maps": {
      "phi": {
        "breakpoints": ["-1", "0", "1", "2"],
        "sections": [ [["0","0"]], [["0","1"]], [["0","1"]], [["0","0"]] ],
        "cells": [
          [ {"lower": ["0","0"], "upper": ["0","0"]} ],
          [ {"lower": ["0","1"], "upper": ["0","1"]} ],
          [ {"lower": ["0","0"], "upper": ["0","0"]} ]
        ]
      }
    },
    "games": {
      "rothberger": {
        "horizon": 2,
        "items": { "kind": "opens", "space": "X" },
        "pool": [ { "class": "a_covers", "ideal": "A" } ],
        "win": { "class": "a_cover", "ideal": "A" }
      },
      "pointopen": {
        "horizon": 2,
        "items": { "kind": "opens", "space": "X" },
        "pool": [ { "class": "nbhd", "set": [0] }, { "class": "nbhd", "set": [1] } ],
        "win": { "class": "a_cover", "ideal": "A", "negate": true }
      }
    },
    "translations": {
      "wgame": { "builtin": "w_game_transfer" }
    },
    "dualities": {
      "roth_po": { "pairing": "covers_vs_nbhd", "g": "rothberger", "h": "pointopen" }
    },
    "commands": {
      "solve": { "game": "rothberger" },
      "verify_duality": { "instance": "roth_po" },
      "verify_translation": { "pair": "wgame" },
      "analyze_map": { "map": "phi", "basics": [["-1/2", "3/4"], ["1/4", "3/2"]] },
      "cof": { "a": "A", "b": "A" }
    }
  })");
}

Json strip_timing(Json j) {
  j.erase("timing_ms");
  return j;
}

}  // namespace

TEST_CASE("solve command") {
  Scenario s = Scenario::parse(base_scenario());
  RunResult r = run_command(s, "solve", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["winner_full"] == "Two");
  CHECK(r.report["results"]["two_has_markov"] == true);
  CHECK(r.report["results"].contains("markov_witness"));
  CHECK(r.report["caveats"].size() == 1);
}

TEST_CASE("cof command") {
  Scenario s = Scenario::parse(base_scenario());
  RunResult r = run_command(s, "cof", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["cofinality"] == 2);
}

TEST_CASE("cof command on the pairs ideal") {
  Json doc = Json::parse(R"({
    "spaces": { "Y": { "points": 3,
      "opens": [[], [0], [1], [2], [0,1], [0,2], [1,2], [0,1,2]] } },
    "ideals": { "P": { "space": "Y", "members": [[0],[1],[2],[0,1],[0,2],[1,2]] } },
    "commands": { "cof": { "a": "P", "b": "P" } }
  })");
  Scenario s = Scenario::parse(doc);
  RunResult r = run_command(s, "cof", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["cofinality"] == 3);
}

TEST_CASE("verify-duality command") {
  Scenario s = Scenario::parse(base_scenario());
  RunResult r = run_command(s, "verify-duality", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["all_hold"] == true);
}

TEST_CASE("verify-translation command") {
  Scenario s = Scenario::parse(base_scenario());
  RunResult r = run_command(s, "verify-translation", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["condition_i"] == true);
  CHECK(r.report["results"]["condition_ii"] == true);
  CHECK(r.report["results"]["markov_transfer_wins_all"] == true);
  CHECK(r.report["results"]["full_transfer_wins_all"] == true);
}

TEST_CASE("analyze-map command reproduces the indicator analysis") {
  Scenario s = Scenario::parse(base_scenario());
  RunResult r = run_command(s, "analyze-map", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["usco"] == true);
  CHECK(r.report["results"]["minimal_cusco"] == "yes");
  CHECK(r.report["results"]["minimal_usco"] == false);
  CHECK(r.report["results"]["vietoris_preimage_open"] == false);
  CHECK(r.report["results"]["bound"] == "1");
  auto pre = r.report["results"]["vietoris_preimage"];
  REQUIRE(pre.size() == 2);
  CHECK(pre[0]["lo"] == "0");
  CHECK(pre[1]["lo"] == "1");
}

TEST_CASE("examples command") {
  Scenario empty;
  RunResult r = run_command(empty, "examples", {});
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["results"]["indicator_example"]["minimal_cusco"] == "yes");
  CHECK(r.report["results"]["indicator_example"]["continuous"] == false);
  CHECK(r.report["results"]["midpoint_augmentation"]["g_usco"] == false);
  CHECK(r.report["results"]["midpoint_augmentation"]["witness_y"] == "3/2");
}

TEST_CASE("reports are deterministic") {
  Scenario s = Scenario::parse(base_scenario());
  RunOptions opts;
  opts.seed = 42;
  Json a = strip_timing(run_command(s, "verify-duality", opts).report);
  Json b = strip_timing(run_command(s, "verify-duality", opts).report);
  CHECK(a.dump() == b.dump());
  RunOptions threaded = opts;
  threaded.threads = 4;
  Json c = strip_timing(run_command(s, "verify-duality", threaded).report);
  CHECK(a.dump() == c.dump());
}

TEST_CASE("validation failures exit with code 2") {
  Json doc = base_scenario();
  doc["commands"]["solve"]["game"] = "missing";
  Scenario s = Scenario::parse(doc);
  RunResult r = run_command(s, "solve", {});
  CHECK(r.exit_code == 2);
  CHECK(r.report.contains("error"));

  Json bad = base_scenario();
  bad["ideals"]["A"]["members"] = Json::array({Json::array({0})});
  CHECK_THROWS_AS(Scenario::parse(bad), ValidationError);

  Json dangling = base_scenario();
  dangling["games"]["rothberger"]["items"]["space"] = "Y";
  CHECK_THROWS_AS(Scenario::parse(dangling), ValidationError);
}

TEST_CASE("budget exhaustion exits with code 3") {
  Scenario s = Scenario::parse(base_scenario());
  RunOptions opts;
  opts.budget = 1;
  RunResult r = run_command(s, "solve", opts);
  CHECK(r.exit_code == 3);
}

TEST_CASE("a failed biconditional exits with code 4") {
  Json doc = base_scenario();
  // Making H a Two-win as well breaks the winner biconditional.
  doc["games"]["pointopen"]["win"] = {{"class", "always"}, {"value", true}};
  Scenario s = Scenario::parse(doc);
  RunResult r = run_command(s, "verify-duality", {});
  CHECK(r.exit_code == 4);
  CHECK(r.report["results"]["all_hold"] == false);
}

TEST_CASE("analyze-map writes CSV band samples on request") {
  Scenario s = Scenario::parse(base_scenario());
  RunOptions opts;
  opts.csv_path = "test_scenario_bands.csv";
  RunResult r = run_command(s, "analyze-map", opts);
  REQUIRE(r.exit_code == 0);
  std::ifstream csv(opts.csv_path);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x,lo,hi");
  std::string row;
  int rows = 0;
  while (std::getline(csv, row))
    if (!row.empty()) ++rows;
  CHECK(rows > 10);
  std::remove(opts.csv_path.c_str());
}

TEST_CASE("universes resolve against declared maps") {
  Json doc = base_scenario();
  doc["maps"]["zero"] = Json::parse(R"({
    "breakpoints": ["-1", "2"],
    "sections": [ [["0","0"]], [["0","0"]] ],
    "cells": [ [ {"lower": ["0","0"], "upper": ["0","0"]} ] ]
  })");
  doc["universes"]["U"] = Json::parse(R"({ "maps": ["phi", "zero"], "zero": "zero" })");
  Scenario s = Scenario::parse(doc);
  const MapUniverse& u = s.universe("U");
  CHECK(u.size() == 2);
  CHECK(u.zero_index() == 1);
  CHECK(u.name(0) == "phi");
  Json bad = doc;
  bad["universes"]["U"]["zero"] = "missing";
  CHECK_THROWS_AS(Scenario::parse(bad), ValidationError);
}

TEST_CASE("map json codec round trips") {
  Scenario s = Scenario::parse(base_scenario());
  const SetValuedMap& phi = s.map("phi");
  Json j = map_to_json(phi);
  SetValuedMap back = map_from_json(j);
  CHECK(back == phi);
}
