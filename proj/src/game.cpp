#include "workbench/game.hpp"

#include "workbench/errors.hpp"

namespace wb {

void GameSpec::validate() const {
  if (horizon < 1) throw ValidationError("game horizon must be >= 1");
  if (pool.empty()) throw ValidationError("game pool must be non-empty");
  for (const auto& m : pool) {
    if (m.items.empty()) throw ValidationError("every move must offer an item");
    for (Item it : m.items)
      if (it < 0 || it >= item_count) throw ValidationError("move item out of range");
  }
  if (!win_for_two.accepts) throw ValidationError("game without a win condition");
}

int two_decision(const GameSpec& game, const TwoStrategy& two,
                 const std::vector<HistoryStep>& past, int move, int turn) {
  int idx;
  if (const auto* markov = std::get_if<MarkovStrategyTwo>(&two)) {
    if (markov->pool_size != static_cast<int>(game.pool.size()) || markov->horizon < game.horizon)
      throw MalformedStrategy("markov table shaped for a different game");
    idx = markov->at(move, turn);
  } else {
    const auto& full = std::get<FullStrategyTwo>(two);
    auto it = full.decisions.find({past, move});
    if (it == full.decisions.end())
      throw MalformedStrategy("full strategy missing a decision for a reachable history");
    idx = it->second;
  }
  if (idx < 0 || idx >= static_cast<int>(game.pool[move].items.size()))
    throw MalformedStrategy("item decision out of range for the move");
  return idx;
}

Transcript play(const GameSpec& game, const OneStrategy& one, const TwoStrategy& two) {
  game.validate();
  Transcript t;
  std::vector<Item> picks;
  std::vector<HistoryStep> past;
  for (int turn = 0; turn < game.horizon; ++turn) {
    int move;
    if (const auto* pre = std::get_if<PredeterminedStrategy>(&one)) {
      if (static_cast<int>(pre->moves.size()) < game.horizon)
        throw MalformedStrategy("predetermined strategy shorter than the horizon");
      move = pre->moves[turn];
    } else {
      const auto& full = std::get<FullStrategyOne>(one);
      auto it = full.decisions.find(picks);
      if (it == full.decisions.end())
        throw MalformedStrategy("One's strategy missing a decision for a reachable history");
      move = it->second;
    }
    if (move < 0 || move >= static_cast<int>(game.pool.size()))
      throw MalformedStrategy("move decision out of range");
    int idx = two_decision(game, two, past, move, turn);
    Item item = game.pool[move].items[idx];
    t.rounds.push_back({move, item});
    picks.push_back(item);
    past.push_back({move, item});
  }
  t.two_wins = game.win_for_two.accepts(picks);
  return t;
}

}  // namespace wb
