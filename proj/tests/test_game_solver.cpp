#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/builtins.hpp"
#include "workbench/errors.hpp"
#include "workbench/solver.hpp"
#include "workbench/translation.hpp"
#include "workbench/win_conditions.hpp"

#include <random>

using namespace wb;

namespace {

// Point-open instantiation on discrete {0,1}: One offers every open around a
// point (the full space included), Two picks one; Two wins when the picks do
// not cover.
GameSpec point_open_game() {
  FiniteSpace d2 = FiniteSpace::discrete(2);
  OpensUniverse ou = opens_universe(d2);
  GameSpec g;
  g.horizon = 2;
  g.item_count = static_cast<int>(ou.item_opens.size());
  g.item_labels = ou.item_labels;
  g.pool = {neighborhood_move(ou, 0b01, true), neighborhood_move(ou, 0b10, true)};
  g.win_for_two = negate(win_plain_cover(d2, ou.item_opens));
  g.name = "point-open";
  return g;
}

GameSpec rothberger_game() {
  FiniteSpace d2 = FiniteSpace::discrete(2);
  OpensUniverse ou = opens_universe(d2);
  GameSpec g;
  g.horizon = 2;
  g.item_count = static_cast<int>(ou.item_opens.size());
  g.item_labels = ou.item_labels;
  g.pool = {opens_move(ou, {0b01, 0b10}, "{{0},{1}}")};
  g.win_for_two = win_open_cover(d2, ou.item_opens);
  g.name = "rothberger";
  return g;
}

GameSpec forced_game() {
  GameSpec g;
  g.horizon = 1;
  g.item_count = 1;
  g.item_labels = {"only"};
  g.pool = {Move{{0}, "m"}};
  g.win_for_two = win_always(true);
  g.name = "forced";
  return g;
}

GameSpec random_table_game(std::mt19937_64& rng) {
  GameSpec g;
  g.horizon = 1 + static_cast<int>(rng() % 2);
  int items = 2 + static_cast<int>(rng() % 3);
  g.item_count = items;
  for (int i = 0; i < items; ++i) g.item_labels.push_back("x" + std::to_string(i));
  int moves = 1 + static_cast<int>(rng() % 3);
  for (int m = 0; m < moves; ++m) {
    Move mv;
    mv.label = "m" + std::to_string(m);
    for (int i = 0; i < items; ++i)
      if (rng() % 2) mv.items.push_back(i);
    if (mv.items.empty()) mv.items.push_back(static_cast<int>(rng() % items));
    g.pool.push_back(std::move(mv));
  }
  std::set<std::vector<Item>> winning;
  std::vector<Item> seq(static_cast<std::size_t>(g.horizon));
  auto fill = [&](auto&& self, int t) -> void {
    if (t == g.horizon) {
      if (rng() % 2) winning.insert(seq);
      return;
    }
    for (int i = 0; i < items; ++i) {
      seq[static_cast<std::size_t>(t)] = i;
      self(self, t + 1);
    }
  };
  fill(fill, 0);
  g.win_for_two = win_table(std::move(winning));
  g.name = "random";
  return g;
}

}  // namespace

TEST_CASE("forced play") {
  GameSpec g = forced_game();
  Transcript t = play(g, PredeterminedStrategy{{0}}, MarkovStrategyTwo{1, 1, {0}});
  CHECK(t.two_wins);
  REQUIRE(t.rounds.size() == 1);
  CHECK(t.rounds[0].item == 0);
}

TEST_CASE("point-open plays from the examples") {
  GameSpec g = point_open_game();
  // One plays N(0) then N(1): every reply covers, so One wins every play.
  for (int i0 = 0; i0 < 2; ++i0)
    for (int i1 = 0; i1 < 2; ++i1) {
      MarkovStrategyTwo two{2, 2, {i0, i0, i1, i1}};
      Transcript t = play(g, PredeterminedStrategy{{0, 1}}, two);
      CHECK(!t.two_wins);
    }
  // One repeats N(0) and Two picks {0} twice: no cover, Two wins.
  MarkovStrategyTwo picks_zero{2, 2, {0, 0, 0, 0}};
  Transcript t = play(g, PredeterminedStrategy{{0, 0}}, picks_zero);
  CHECK(t.two_wins);
}

TEST_CASE("malformed strategies are rejected") {
  GameSpec g = point_open_game();
  CHECK_THROWS_AS(play(g, PredeterminedStrategy{{0}}, MarkovStrategyTwo{2, 2, {0, 0, 0, 0}}),
                  MalformedStrategy);
  CHECK_THROWS_AS(play(g, PredeterminedStrategy{{0, 1}}, MarkovStrategyTwo{2, 2, {0, 0, 0, 9}}),
                  MalformedStrategy);
  CHECK_THROWS_AS(play(g, PredeterminedStrategy{{0, 1}}, FullStrategyTwo{}), MalformedStrategy);
}

TEST_CASE("solve the spec examples") {
  GameSpec po = point_open_game();
  SolveReport r = solve(po);
  CHECK(r.winner_full == Winner::One);
  CHECK(r.one_has_predetermined);
  REQUIRE(r.predetermined_witness);
  CHECK(r.predetermined_witness->moves == std::vector<int>{0, 1});
  CHECK(!s1_holds(po));

  SolveReport f = solve(forced_game());
  CHECK(f.winner_full == Winner::Two);
  CHECK(f.two_has_markov);

  SolveReport roth = solve(rothberger_game());
  CHECK(roth.winner_full == Winner::Two);
  CHECK(roth.two_has_markov);
  REQUIRE(roth.markov_witness);
  // pick the set containing the point matching the turn index
  CHECK(roth.markov_witness->at(0, 0) == 0);
  CHECK(roth.markov_witness->at(0, 1) == 1);
  CHECK(s1_holds(rothberger_game()));
}

TEST_CASE("witness strategies reproduce the winner against all opposition") {
  for (GameSpec g : {point_open_game(), rothberger_game(), forced_game()}) {
    SolveReport r = solve(g);
    if (r.winner_full == Winner::Two) {
      StrategyAudit audit = audit_two_strategy(g, *r.two_full_witness);
      CHECK(audit.wins_all);
      if (r.markov_witness) CHECK(audit_two_strategy(g, *r.markov_witness).wins_all);
    } else {
      StrategyAudit audit = audit_one_strategy(g, *r.one_full_witness);
      CHECK(audit.wins_all);
      if (r.predetermined_witness)
        CHECK(audit_one_strategy(g, *r.predetermined_witness).wins_all);
    }
  }
}

TEST_CASE("budget is a deterministic pre-flight estimate") {
  GameSpec g = rothberger_game();
  long long cost = solve_cost_estimate(g);
  CHECK_THROWS_AS(solve(g, SolveOptions{cost - 1, 0}), BudgetExceeded);
  try {
    solve(g, SolveOptions{cost - 1, 0});
  } catch (const BudgetExceeded& e) {
    CHECK(e.nodes == cost);
  }
  CHECK(solve(g, SolveOptions{cost, 0}).nodes == cost);
  CHECK_THROWS_AS(solve_reference(g, SolveOptions{cost - 1, 0}), BudgetExceeded);
}

TEST_CASE("reference and parallel solver agree bit for bit") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 120; ++trial) {
    GameSpec g = random_table_game(rng);
    SolveReport ref = solve_reference(g);
    SolveReport one = solve(g, SolveOptions{200'000'000, 1});
    SolveReport four = solve(g, SolveOptions{200'000'000, 4});
    CHECK(reports_equal(ref, one));
    CHECK(reports_equal(one, four));
  }
}

TEST_CASE("determinacy and the strategy hierarchy on random games") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    GameSpec g = random_table_game(rng);
    SolveReport r = solve(g);
    if (r.two_has_markov) CHECK(r.winner_full == Winner::Two);
    if (r.one_has_predetermined) CHECK(r.winner_full == Winner::One);
    CHECK(!(r.two_has_markov && r.one_has_predetermined));
    CHECK(s1_holds(g) == !r.one_has_predetermined);
  }
}

TEST_CASE("reference agreement on semantic cover-class games") {
  // Random pools of opens over random 3-point topologies with cover-class
  // win conditions, cross-checked bit for bit against the reference.
  std::mt19937_64 rng(5150);
  auto spaces = FiniteSpace::enumerate_all(3);
  int solved = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const FiniteSpace& sp = spaces[rng() % spaces.size()];
    OpensUniverse ou = opens_universe(sp);
    std::vector<PointSet> propers = sp.proper_opens();
    if (propers.empty()) continue;
    GameSpec g;
    g.horizon = 1 + static_cast<int>(rng() % 2);
    g.item_count = static_cast<int>(ou.item_opens.size());
    g.item_labels = ou.item_labels;
    int moves = 1 + static_cast<int>(rng() % 2);
    for (int m = 0; m < moves; ++m) {
      std::vector<PointSet> masks;
      for (PointSet o : propers)
        if (rng() % 2) masks.push_back(o);
      if (masks.empty()) masks.push_back(propers[rng() % propers.size()]);
      g.pool.push_back(opens_move(ou, masks, "m" + std::to_string(m)));
    }
    auto ideals = IdealFamily::enumerate_all(sp);
    WinCondition win;
    switch (rng() % 3) {
      case 0: win = win_open_cover(sp, ou.item_opens); break;
      case 1: win = win_plain_cover(sp, ou.item_opens); break;
      default:
        if (ideals.empty()) {
          win = win_open_cover(sp, ou.item_opens);
        } else {
          win = win_large_cover(sp, ideals[rng() % ideals.size()].members(), ou.item_opens,
                                1 + static_cast<int>(rng() % 2));
        }
    }
    g.win_for_two = rng() % 2 ? negate(std::move(win)) : std::move(win);
    g.name = "semantic";
    SolveReport fast = solve(g);
    SolveReport ref = solve_reference(g);
    CHECK(reports_equal(fast, ref));
    ++solved;
  }
  CHECK(solved > 40);
}

TEST_CASE("monotone targets never flip a Two win when the horizon grows") {
  // Cover-type predicates are monotone in the picks; an extra turn can only
  // help Two assemble the cover.
  GameSpec base = rothberger_game();
  SolveReport two_turns = solve(base);
  REQUIRE(two_turns.winner_full == Winner::Two);
  GameSpec longer = base;
  longer.horizon = 3;
  CHECK(solve(longer).winner_full == Winner::Two);
}
