#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/builtins.hpp"
#include "workbench/errors.hpp"

#include <random>

using namespace wb;

namespace {

const DeskRegistry& registry() {
  static DeskRegistry reg = make_default_registry();
  return reg;
}

void expect_pair_sound(BuiltinTranslation which) {
  TranslationPair pair = builtin_translation(which, registry());
  CAPTURE(pair.name);
  ConditionIReport ci = check_condition_i(pair);
  CAPTURE(ci.detail);
  CHECK(ci.ok);
  ConditionIIReport cii = check_condition_ii(pair, 50'000'000);
  CHECK(cii.ok);
  CHECK(cii.plays > 0);

  SolveReport rg = solve(pair.game_g);
  REQUIRE(rg.winner_full == Winner::Two);
  REQUIRE(rg.two_has_markov);

  MarkovStrategyTwo markov_h = transfer_markov(pair, *rg.markov_witness);
  CHECK(audit_two_strategy(pair.game_h, markov_h).wins_all);
  FullStrategyTwo full_h = transfer_full(pair, *rg.two_full_witness);
  CHECK(audit_two_strategy(pair.game_h, full_h).wins_all);
}

}  // namespace

TEST_CASE("identity pair is sound") {
  expect_pair_sound(BuiltinTranslation::Identity);
  TranslationPair pair = builtin_translation(BuiltinTranslation::Identity, registry());
  SolveReport rg = solve(pair.game_g);
  MarkovStrategyTwo via = transfer_markov(pair, *rg.markov_witness);
  CHECK(via.table == rg.markov_witness->table);
}

TEST_CASE("builtin pairs are sound on the registered instantiation") {
  expect_pair_sound(BuiltinTranslation::CoversToFanTightness);
  expect_pair_sound(BuiltinTranslation::DenseToCovers);
  expect_pair_sound(BuiltinTranslation::NeighborhoodsToClosedDiscrete);
  expect_pair_sound(BuiltinTranslation::WGameTransfer);
}

TEST_CASE("the fixed-cover fallback branch is exercised") {
  TranslationPair pair =
      builtin_translation(BuiltinTranslation::CoversToFanTightness, registry());
  // Move F0 = {0} has a whole-space small preimage, so t_one sends it to the
  // fixed cover (index 0) at every turn; Fpair takes the pruned-preimage route.
  for (int n = 0; n < pair.game_g.horizon; ++n)
    CHECK(pair.t_one[static_cast<std::size_t>(n)][0] == 0);
  const FunctionGrid& grid = registry().pack->grid;
  for (int n = 0; n < pair.game_g.horizon; ++n)
    for (Item x : pair.game_g.pool[0].items) {
      Item member = pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)][0];
      CHECK(small_preimage_points(grid, member, static_cast<unsigned>(n)) ==
            registry().space.full());
    }
}

TEST_CASE("a corrupted translation is caught with a counterexample") {
  TranslationPair pair =
      builtin_translation(BuiltinTranslation::CoversToFanTightness, registry());
  // Send every G pick to the first item of the H move: condition (i) still
  // holds (the item is offered) but the constant choice from the full family
  // is the far member, which never clusters at zero.
  for (auto& row : pair.t_two)
    for (auto& cols : row)
      for (std::size_t b = 0; b < cols.size(); ++b)
        cols[b] = pair.game_h.pool[b].items.front();
  CHECK(check_condition_i(pair).ok);
  ConditionIIReport cii = check_condition_ii(pair, 50'000'000);
  REQUIRE(!cii.ok);
  REQUIRE(cii.counterexample);
  CHECK(cii.counterexample->h_moves.size() == static_cast<std::size_t>(pair.game_g.horizon));

  // The transferred strategy now loses some play.
  SolveReport rg = solve(pair.game_g);
  REQUIRE(rg.two_has_markov);
  MarkovStrategyTwo markov_h = transfer_markov(pair, *rg.markov_witness);
  StrategyAudit audit = audit_two_strategy(pair.game_h, markov_h);
  CHECK(!audit.wins_all);
  CHECK(audit.losing_play);
}

TEST_CASE("a translation image outside the move is flagged") {
  TranslationPair pair = builtin_translation(BuiltinTranslation::Identity, registry());
  for (auto& row : pair.t_two)
    for (auto& cols : row)
      for (auto& y : cols) y = 0;  // the empty-set item is never offered
  CHECK(!check_condition_i(pair).ok);
  SolveReport rg = solve(pair.game_g);
  CHECK_THROWS_AS(transfer_markov(pair, *rg.markov_witness), TransferUnsound);
  CHECK_THROWS_AS(transfer_full(pair, *rg.two_full_witness), TransferUnsound);
}

TEST_CASE("composition of verified pairs stays verified") {
  TranslationPair base = builtin_translation(BuiltinTranslation::DenseToCovers, registry());
  TranslationPair identity_h = identity_pair(base.game_h);
  TranslationPair composed = compose_pairs(base, identity_h);
  CHECK(check_condition_i(composed).ok);
  CHECK(check_condition_ii(composed, 50'000'000).ok);
  TranslationPair identity_g = identity_pair(base.game_g);
  TranslationPair composed2 = compose_pairs(identity_g, base);
  CHECK(check_condition_i(composed2).ok);
  CHECK(check_condition_ii(composed2, 50'000'000).ok);
  CHECK_THROWS_AS(compose_pairs(base, base), ValidationError);
}

TEST_CASE("identity transfer is sound on randomized games") {
  std::mt19937_64 rng(90210);
  int transferred = 0;
  for (int trial = 0; trial < 60; ++trial) {
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

    TranslationPair pair = identity_pair(g);
    CHECK(check_condition_i(pair).ok);
    CHECK(check_condition_ii(pair, 100'000'000).ok);
    SolveReport r = solve(g);
    if (r.winner_full != Winner::Two) continue;
    ++transferred;
    FullStrategyTwo th = transfer_full(pair, *r.two_full_witness);
    CHECK(audit_two_strategy(g, th).wins_all);
    if (r.markov_witness)
      CHECK(audit_two_strategy(g, transfer_markov(pair, *r.markov_witness)).wins_all);
  }
  CHECK(transferred > 0);
}

TEST_CASE("duality of the Rothberger and point-open instantiations") {
  FiniteSpace d2 = FiniteSpace::discrete(2);
  OpensUniverse ou = opens_universe(d2);
  IdealFamily singles(d2, {0b01, 0b10});

  DualityInstance inst;
  inst.label = "rothberger-vs-point-open";
  inst.pairing = DualityPairing::CoversVsNeighborhoods;
  inst.game_g.horizon = 2;
  inst.game_g.item_count = static_cast<int>(ou.item_opens.size());
  inst.game_g.item_labels = ou.item_labels;
  for (const auto& c : all_a_covers(d2, singles, 2))
    inst.game_g.pool.push_back(opens_move(ou, c, "cover"));
  inst.game_g.win_for_two = win_open_cover(d2, ou.item_opens);
  inst.game_g.name = "rothberger";
  inst.game_h.horizon = 2;
  inst.game_h.item_count = inst.game_g.item_count;
  inst.game_h.item_labels = ou.item_labels;
  inst.game_h.pool = {neighborhood_move(ou, 0b01, false), neighborhood_move(ou, 0b10, false)};
  inst.game_h.win_for_two = negate(win_open_cover(d2, ou.item_opens));
  inst.game_h.name = "point-open";

  DualityReport rep = verify_duality(inst);
  CHECK(rep.all_hold);
  CHECK(rep.report_g.winner_full == Winner::Two);
  CHECK(rep.report_g.two_has_markov);
  CHECK(rep.report_h.winner_full == Winner::One);
  CHECK(rep.report_h.one_has_predetermined);
}

TEST_CASE("duality of dense selection and open selection on the Sierpinski space") {
  FiniteSpace sp = FiniteSpace::sierpinski();
  DualityInstance inst;
  inst.label = "dense-vs-opens-sierpinski";
  inst.pairing = DualityPairing::DenseVsOpens;
  auto make = [&](std::vector<Move> pool, WinCondition win, const std::string& name) {
    GameSpec g;
    g.horizon = 2;
    g.pool = std::move(pool);
    g.item_count = 2;
    g.item_labels = point_labels(sp);
    g.win_for_two = std::move(win);
    g.name = name;
    return g;
  };
  // Dense subsets: {1} and {0,1}; proper opens: {1}.
  inst.game_g = make({points_move(sp, 0b10, "{1}"), points_move(sp, 0b11, "{0,1}")},
                     win_omega_at(sp, 0), "dense-selection");
  inst.game_h =
      make({points_move(sp, 0b10, "{1}")}, negate(win_omega_at(sp, 0)), "open-selection");
  DualityReport rep = verify_duality(inst);
  CHECK(rep.all_hold);
  CHECK(rep.report_g.winner_full == Winner::Two);
}

TEST_CASE("degenerate duality instance holds vacuously") {
  GameSpec g = builtin_translation(BuiltinTranslation::Identity, registry()).game_g;
  g.win_for_two = win_always(true);
  GameSpec h = g;
  h.win_for_two = win_always(false);
  h.name = "never";
  DualityInstance inst{"degenerate", DualityPairing::CoversVsNeighborhoods, g, h};
  DualityReport rep = verify_duality(inst);
  CHECK(rep.all_hold);
  CHECK(rep.report_g.winner_full == Winner::Two);
  CHECK(rep.report_h.winner_full == Winner::One);
}

TEST_CASE("duality suite enumerates and is exhaustive within its envelope") {
  DualitySuite suite = duality_suite(2, 3, 2);
  CHECK(!suite.instances.empty());
  long long failures = 0;
  for (const auto& inst : suite.instances) {
    DualityReport rep = verify_duality(inst);
    if (!rep.all_hold) {
      ++failures;
      CAPTURE(inst.label);
      CHECK(rep.all_hold);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("duality biconditionals survive a wider pool envelope") {
  // Beyond the acceptance envelope: pools up to 6 moves on three points.
  DualitySuite suite = duality_suite(3, 6, 2);
  CHECK(suite.instances.size() > 500);
  for (const auto& inst : suite.instances) {
    DualityReport rep = verify_duality(inst);
    CAPTURE(inst.label);
    CHECK(rep.all_hold);
  }
}

TEST_CASE("the translation preorder interacts with duality as in the transfer lemma") {
  // For dual pairs (G1,H1), (G2,H2): when the four transfer implications
  // G1 <= G2 hold on the solved flags, the reversed implications H2 <= H1
  // must hold as well.
  DualitySuite suite = duality_suite(2, 3, 1);
  std::vector<DualityReport> reports;
  for (const auto& inst : suite.instances) reports.push_back(verify_duality(inst));
  auto leq_flags = [](const SolveReport& a, const SolveReport& b) {
    auto implies = [](bool x, bool y) { return !x || y; };
    return implies(a.two_has_markov, b.two_has_markov) &&
           implies(a.winner_full == Winner::Two, b.winner_full == Winner::Two) &&
           implies(a.winner_full != Winner::One, b.winner_full != Winner::One) &&
           implies(!a.one_has_predetermined, !b.one_has_predetermined);
  };
  int checked = 0;
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (std::size_t j = 0; j < reports.size(); ++j) {
      if (!reports[i].all_hold || !reports[j].all_hold) continue;
      if (leq_flags(reports[i].report_g, reports[j].report_g)) {
        ++checked;
        CHECK(leq_flags(reports[j].report_h, reports[i].report_h));
      }
    }
  CHECK(checked > 0);
}
