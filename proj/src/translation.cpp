#include "workbench/translation.hpp"

#include "workbench/errors.hpp"

#include <algorithm>

namespace wb {

void TranslationPair::validate_shape() const {
  game_g.validate();
  game_h.validate();
  if (game_g.horizon != game_h.horizon)
    throw ValidationError("translation pair needs equal horizons");
  int h = game_g.horizon;
  if (static_cast<int>(t_one.size()) != h || static_cast<int>(t_two.size()) != h)
    throw ValidationError("translation tables must cover every turn");
  for (int n = 0; n < h; ++n) {
    if (t_one[static_cast<std::size_t>(n)].size() != game_h.pool.size())
      throw ValidationError("t_one row must cover the H pool");
    for (int g_move : t_one[static_cast<std::size_t>(n)])
      if (g_move < 0 || g_move >= static_cast<int>(game_g.pool.size()))
        throw ValidationError("t_one image out of range");
    if (static_cast<int>(t_two[static_cast<std::size_t>(n)].size()) != game_g.item_count)
      throw ValidationError("t_two row must cover the G items");
    for (const auto& row : t_two[static_cast<std::size_t>(n)])
      if (row.size() != game_h.pool.size())
        throw ValidationError("t_two column must cover the H pool");
  }
}

TranslationPair identity_pair(const GameSpec& g, const std::string& name) {
  TranslationPair pair;
  pair.name = name;
  pair.game_g = g;
  pair.game_h = g;
  int h = g.horizon;
  pair.t_one.assign(static_cast<std::size_t>(h), {});
  pair.t_two.assign(static_cast<std::size_t>(h), {});
  for (int n = 0; n < h; ++n) {
    auto& row = pair.t_one[static_cast<std::size_t>(n)];
    row.resize(g.pool.size());
    for (std::size_t m = 0; m < g.pool.size(); ++m) row[m] = static_cast<int>(m);
    auto& two = pair.t_two[static_cast<std::size_t>(n)];
    two.assign(static_cast<std::size_t>(g.item_count),
               std::vector<Item>(g.pool.size(), 0));
    for (int x = 0; x < g.item_count; ++x)
      for (std::size_t m = 0; m < g.pool.size(); ++m) two[static_cast<std::size_t>(x)][m] = x;
  }
  return pair;
}

ConditionIReport check_condition_i(const TranslationPair& pair) {
  pair.validate_shape();
  for (int n = 0; n < pair.game_g.horizon; ++n)
    for (std::size_t b = 0; b < pair.game_h.pool.size(); ++b) {
      int g_move = pair.t_one[static_cast<std::size_t>(n)][b];
      const auto& h_items = pair.game_h.pool[b].items;
      for (Item x : pair.game_g.pool[static_cast<std::size_t>(g_move)].items) {
        Item y = pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)][b];
        if (std::find(h_items.begin(), h_items.end(), y) == h_items.end())
          return {false, "turn " + std::to_string(n) + ", H-move " +
                             pair.game_h.pool[b].label + ": translated item not offered"};
      }
    }
  return {true, ""};
}

ConditionIIReport check_condition_ii(const TranslationPair& pair, long long budget) {
  pair.validate_shape();
  int h = pair.game_g.horizon;
  // Per-turn joint choices (B, x in t_one(n, B)).
  long long total = 1;
  for (int n = 0; n < h; ++n) {
    long long per_turn = 0;
    for (std::size_t b = 0; b < pair.game_h.pool.size(); ++b)
      per_turn += static_cast<long long>(
          pair.game_g.pool[static_cast<std::size_t>(pair.t_one[static_cast<std::size_t>(n)][b])]
              .items.size());
    if (per_turn == 0) return {true, std::nullopt, 0};
    if (total > budget / per_turn) throw BudgetExceeded(budget + 1);
    total *= per_turn;
  }

  std::vector<int> h_moves(static_cast<std::size_t>(h));
  std::vector<Item> g_picks(static_cast<std::size_t>(h)), h_picks(static_cast<std::size_t>(h));
  long long checked = 0;
  // Depth-first, move-major then item-minor per turn, turn 0 outermost: the
  // first counterexample is lexicographically least.
  std::optional<PlayCounterexample> cex;
  auto rec = [&](auto&& self, int turn) -> bool {
    if (turn == h) {
      ++checked;
      if (pair.game_g.win_for_two.accepts(g_picks) && !pair.game_h.win_for_two.accepts(h_picks)) {
        cex = PlayCounterexample{h_moves, g_picks, h_picks};
        return false;
      }
      return true;
    }
    for (std::size_t b = 0; b < pair.game_h.pool.size(); ++b) {
      int g_move = pair.t_one[static_cast<std::size_t>(turn)][b];
      for (Item x : pair.game_g.pool[static_cast<std::size_t>(g_move)].items) {
        h_moves[static_cast<std::size_t>(turn)] = static_cast<int>(b);
        g_picks[static_cast<std::size_t>(turn)] = x;
        h_picks[static_cast<std::size_t>(turn)] =
            pair.t_two[static_cast<std::size_t>(turn)][static_cast<std::size_t>(x)][b];
        if (!self(self, turn + 1)) return false;
      }
    }
    return true;
  };
  bool ok = rec(rec, 0);
  return {ok, std::move(cex), checked};
}

MarkovStrategyTwo transfer_markov(const TranslationPair& pair, const MarkovStrategyTwo& tau_g) {
  pair.validate_shape();
  MarkovStrategyTwo out;
  out.pool_size = static_cast<int>(pair.game_h.pool.size());
  out.horizon = pair.game_g.horizon;
  out.table.assign(static_cast<std::size_t>(out.pool_size) * out.horizon, 0);
  for (int b = 0; b < out.pool_size; ++b)
    for (int n = 0; n < out.horizon; ++n) {
      int g_move = pair.t_one[static_cast<std::size_t>(n)][static_cast<std::size_t>(b)];
      const auto& g_items = pair.game_g.pool[static_cast<std::size_t>(g_move)].items;
      int g_idx = tau_g.at(g_move, n);
      if (g_idx < 0 || g_idx >= static_cast<int>(g_items.size()))
        throw MalformedStrategy("tau_g decision out of range");
      Item x = g_items[static_cast<std::size_t>(g_idx)];
      Item y = pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)]
                         [static_cast<std::size_t>(b)];
      const auto& h_items = pair.game_h.pool[static_cast<std::size_t>(b)].items;
      auto it = std::find(h_items.begin(), h_items.end(), y);
      if (it == h_items.end())
        throw TransferUnsound("translated pick is not offered by the H move");
      out.at(b, n) = static_cast<int>(it - h_items.begin());
    }
  return out;
}

FullStrategyTwo transfer_full(const TranslationPair& pair, const FullStrategyTwo& tau_g) {
  pair.validate_shape();
  FullStrategyTwo out;
  int h = pair.game_g.horizon;
  struct Frame {
    std::vector<HistoryStep> h_past, g_past;
  };
  std::vector<Frame> stack = {{}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    int turn = static_cast<int>(f.h_past.size());
    if (turn == h) continue;
    for (int b = 0; b < static_cast<int>(pair.game_h.pool.size()); ++b) {
      int g_move = pair.t_one[static_cast<std::size_t>(turn)][static_cast<std::size_t>(b)];
      auto it = tau_g.decisions.find({f.g_past, g_move});
      if (it == tau_g.decisions.end())
        throw MalformedStrategy("tau_g missing a decision on the simulated history");
      const auto& g_items = pair.game_g.pool[static_cast<std::size_t>(g_move)].items;
      if (it->second < 0 || it->second >= static_cast<int>(g_items.size()))
        throw MalformedStrategy("tau_g decision out of range");
      Item x = g_items[static_cast<std::size_t>(it->second)];
      Item y = pair.t_two[static_cast<std::size_t>(turn)][static_cast<std::size_t>(x)]
                         [static_cast<std::size_t>(b)];
      const auto& h_items = pair.game_h.pool[static_cast<std::size_t>(b)].items;
      auto pos = std::find(h_items.begin(), h_items.end(), y);
      if (pos == h_items.end())
        throw TransferUnsound("translated pick is not offered by the H move");
      out.decisions[{f.h_past, b}] = static_cast<int>(pos - h_items.begin());
      Frame next = f;
      next.h_past.push_back({b, y});
      next.g_past.push_back({g_move, x});
      stack.push_back(std::move(next));
    }
  }
  return out;
}

StrategyAudit audit_two_strategy(const GameSpec& game, const TwoStrategy& two) {
  game.validate();
  StrategyAudit audit;
  std::vector<int> moves(static_cast<std::size_t>(game.horizon), 0);
  auto rec = [&](auto&& self, int turn) -> bool {
    if (turn == game.horizon) {
      ++audit.plays;
      Transcript t = play(game, PredeterminedStrategy{moves}, two);
      if (!t.two_wins) {
        audit.wins_all = false;
        audit.losing_play = std::move(t);
        return false;
      }
      return true;
    }
    for (int m = 0; m < static_cast<int>(game.pool.size()); ++m) {
      moves[static_cast<std::size_t>(turn)] = m;
      if (!self(self, turn + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
  return audit;
}

StrategyAudit audit_one_strategy(const GameSpec& game, const OneStrategy& one) {
  game.validate();
  StrategyAudit audit;
  // Two's replies, positionally: reply[t] = item index within the move played
  // at turn t, enumerated depth-first against One's strategy.
  std::vector<int> replies(static_cast<std::size_t>(game.horizon), 0);
  auto run_play = [&]() {
    Transcript t;
    std::vector<Item> picks;
    for (int turn = 0; turn < game.horizon; ++turn) {
      int move;
      if (const auto* pre = std::get_if<PredeterminedStrategy>(&one)) {
        move = pre->moves[static_cast<std::size_t>(turn)];
      } else {
        const auto& full = std::get<FullStrategyOne>(one);
        auto it = full.decisions.find(picks);
        if (it == full.decisions.end())
          throw MalformedStrategy("One's strategy missing a reachable decision");
        move = it->second;
      }
      const auto& items = game.pool[static_cast<std::size_t>(move)].items;
      int idx = replies[static_cast<std::size_t>(turn)] % static_cast<int>(items.size());
      Item item = items[static_cast<std::size_t>(idx)];
      t.rounds.push_back({move, item});
      picks.push_back(item);
    }
    t.two_wins = game.win_for_two.accepts(picks);
    return t;
  };
  // The reply space is bounded by the largest move; out-of-range indices wrap,
  // which may repeat plays but cannot miss one.
  std::size_t max_items = 0;
  for (const auto& m : game.pool) max_items = std::max(max_items, m.items.size());
  auto rec = [&](auto&& self, int turn) -> bool {
    if (turn == game.horizon) {
      ++audit.plays;
      Transcript t = run_play();
      if (t.two_wins) {
        audit.wins_all = false;
        audit.losing_play = std::move(t);
        return false;
      }
      return true;
    }
    for (std::size_t i = 0; i < max_items; ++i) {
      replies[static_cast<std::size_t>(turn)] = static_cast<int>(i);
      if (!self(self, turn + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
  return audit;
}

TranslationPair compose_pairs(const TranslationPair& gh, const TranslationPair& hk) {
  gh.validate_shape();
  hk.validate_shape();
  if (gh.game_g.horizon != hk.game_g.horizon)
    throw ValidationError("compose_pairs: differing horizons");
  // The middle games must match structurally.
  if (gh.game_h.pool.size() != hk.game_g.pool.size() ||
      gh.game_h.item_count != hk.game_g.item_count)
    throw ValidationError("compose_pairs: middle games do not line up");
  for (std::size_t m = 0; m < gh.game_h.pool.size(); ++m)
    if (gh.game_h.pool[m].items != hk.game_g.pool[m].items)
      throw ValidationError("compose_pairs: middle games do not line up");

  TranslationPair out;
  out.name = gh.name + ";" + hk.name;
  out.game_g = gh.game_g;
  out.game_h = hk.game_h;
  int h = gh.game_g.horizon;
  out.t_one.assign(static_cast<std::size_t>(h), {});
  out.t_two.assign(static_cast<std::size_t>(h), {});
  for (int n = 0; n < h; ++n) {
    auto& row = out.t_one[static_cast<std::size_t>(n)];
    row.resize(out.game_h.pool.size());
    for (std::size_t c = 0; c < out.game_h.pool.size(); ++c)
      row[c] = gh.t_one[static_cast<std::size_t>(n)][static_cast<std::size_t>(
          hk.t_one[static_cast<std::size_t>(n)][c])];
    auto& two = out.t_two[static_cast<std::size_t>(n)];
    two.assign(static_cast<std::size_t>(out.game_g.item_count),
               std::vector<Item>(out.game_h.pool.size(), 0));
    for (int x = 0; x < out.game_g.item_count; ++x)
      for (std::size_t c = 0; c < out.game_h.pool.size(); ++c) {
        int b = hk.t_one[static_cast<std::size_t>(n)][c];
        Item y = gh.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)]
                          [static_cast<std::size_t>(b)];
        two[static_cast<std::size_t>(x)][c] =
            hk.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(y)][c];
      }
  }
  return out;
}

DualityReport verify_duality(const DualityInstance& inst, const SolveOptions& opts) {
  DualityReport rep;
  rep.report_g = solve(inst.game_g, opts);
  rep.report_h = solve(inst.game_h, opts);
  bool one_g = rep.report_g.winner_full == Winner::One;
  bool two_g = !one_g;
  bool one_h = rep.report_h.winner_full == Winner::One;
  bool two_h = !one_h;
  rep.one_g_iff_two_h = one_g == two_h;
  rep.two_g_iff_one_h = two_g == one_h;
  rep.pre_g_iff_markov_h = rep.report_g.one_has_predetermined == rep.report_h.two_has_markov;
  rep.markov_g_iff_pre_h = rep.report_g.two_has_markov == rep.report_h.one_has_predetermined;
  rep.all_hold = rep.one_g_iff_two_h && rep.two_g_iff_one_h && rep.pre_g_iff_markov_h &&
                 rep.markov_g_iff_pre_h;
  return rep;
}

}  // namespace wb
