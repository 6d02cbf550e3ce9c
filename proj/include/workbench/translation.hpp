#pragma once

#include "workbench/game.hpp"
#include "workbench/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wb {

// The two translation oracles between a source game G and a target game H,
// tabulated over the finite pools: t_one maps (turn, H-move) to a G-move and
// t_two maps (turn, G-item, H-move) to a raw H item.
struct TranslationPair {
  std::string name;
  GameSpec game_g, game_h;
  std::vector<std::vector<int>> t_one;            // [turn][h_move] -> g_move
  std::vector<std::vector<std::vector<Item>>> t_two;  // [turn][g_item][h_move] -> h item

  void validate_shape() const;
};

TranslationPair identity_pair(const GameSpec& g, const std::string& name = "identity");

// Condition (i): whenever x is an item of t_one(n, B), t_two(n, x, B) is an
// item of B. Exhaustive over turns, moves and items.
struct ConditionIReport {
  bool ok = true;
  std::string detail;
};
ConditionIReport check_condition_i(const TranslationPair& pair);

// Condition (ii), bounded by the horizon and pools: for every H-move sequence
// and every per-turn selection from the translated G-move, a winning pick
// sequence for G must translate to a winning pick sequence for H.
struct PlayCounterexample {
  std::vector<int> h_moves;
  std::vector<Item> g_picks;
  std::vector<Item> h_picks;
};
struct ConditionIIReport {
  bool ok = true;
  std::optional<PlayCounterexample> counterexample;
  long long plays = 0;
};
ConditionIIReport check_condition_ii(const TranslationPair& pair, long long budget);

// tau_H(B, n) = t_two(n, tau_G(t_one(n, B), n), B).
MarkovStrategyTwo transfer_markov(const TranslationPair& pair, const MarkovStrategyTwo& tau_g);
// Full transfer threads the translated history through tau_G.
FullStrategyTwo transfer_full(const TranslationPair& pair, const FullStrategyTwo& tau_g);

// Exhaustive audit of a strategy for Two against every One move sequence.
struct StrategyAudit {
  bool wins_all = true;
  std::optional<Transcript> losing_play;
  long long plays = 0;
};
StrategyAudit audit_two_strategy(const GameSpec& game, const TwoStrategy& two);

// Exhaustive audit of One's strategy against every reply sequence; wins_all
// means Two loses every play.
StrategyAudit audit_one_strategy(const GameSpec& game, const OneStrategy& one);

// Composition along a shared middle game: from pairs witnessing G <= H and
// H <= K, the pair witnessing G <= K.
TranslationPair compose_pairs(const TranslationPair& gh, const TranslationPair& hk);

// --- duality ----------------------------------------------------------------

enum class DualityPairing { CoversVsNeighborhoods, DenseVsOpens, ClusterVsNeighborhoodsAt };

struct DualityInstance {
  std::string label;
  DualityPairing pairing;
  GameSpec game_g, game_h;
};

struct DualityReport {
  SolveReport report_g, report_h;
  bool one_g_iff_two_h = false;
  bool two_g_iff_one_h = false;
  bool pre_g_iff_markov_h = false;
  bool markov_g_iff_pre_h = false;
  bool all_hold = false;
  bool finite_surrogate = true;
};

DualityReport verify_duality(const DualityInstance& inst, const SolveOptions& opts = {});

}  // namespace wb
