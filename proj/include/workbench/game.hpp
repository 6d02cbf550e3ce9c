#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wb {

// Items are opaque ids resolved against a registered universe (points, opens,
// grid members or abstract labels). The engine only sees the ids.
using Item = int;

struct Move {
  std::vector<Item> items;
  std::string label;
};

struct WinCondition {
  std::string name;
  bool finite_surrogate = false;
  std::function<bool(std::span<const Item>)> accepts;
};

inline WinCondition negate(WinCondition w) {
  auto inner = std::move(w.accepts);
  w.accepts = [inner](std::span<const Item> picks) { return !inner(picks); };
  w.name = "not(" + w.name + ")";
  return w;
}

struct GameSpec {
  int horizon = 1;
  std::vector<Move> pool;
  int item_count = 0;
  std::vector<std::string> item_labels;
  WinCondition win_for_two;
  std::string name;

  void validate() const;
};

// One's limited-information strategy: a move index per turn.
struct PredeterminedStrategy {
  std::vector<int> moves;
};

// Two's limited-information strategy: item index within the move, per
// (move, turn).
struct MarkovStrategyTwo {
  int pool_size = 0;
  int horizon = 0;
  std::vector<int> table;  // [move * horizon + turn]

  int& at(int move, int turn) { return table[static_cast<std::size_t>(move) * horizon + turn]; }
  int at(int move, int turn) const { return table[static_cast<std::size_t>(move) * horizon + turn]; }
};

// One's full strategy: move index keyed by the items Two picked so far.
struct FullStrategyOne {
  std::map<std::vector<Item>, int> decisions;
};

// Two's full strategy: item index within the current move, keyed by the whole
// visible history (moves and picks so far, then the current move).
struct HistoryStep {
  int move;
  Item pick;
  auto operator<=>(const HistoryStep&) const = default;
};
struct FullStrategyTwo {
  std::map<std::pair<std::vector<HistoryStep>, int>, int> decisions;
};

using OneStrategy = std::variant<PredeterminedStrategy, FullStrategyOne>;
using TwoStrategy = std::variant<MarkovStrategyTwo, FullStrategyTwo>;

struct Transcript {
  struct Round {
    int move;
    Item item;
  };
  std::vector<Round> rounds;
  bool two_wins = false;
};

// Deterministic play-out; throws MalformedStrategy on a missing or out-of-range
// decision.
Transcript play(const GameSpec& game, const OneStrategy& one, const TwoStrategy& two);

// Two's reply for a single position under either strategy form (index within
// the move).
int two_decision(const GameSpec& game, const TwoStrategy& two,
                 const std::vector<HistoryStep>& past, int move, int turn);

}  // namespace wb
