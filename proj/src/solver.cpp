#include "workbench/solver.hpp"

#include "workbench/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <map>

namespace wb {

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WORKBENCH_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, omp_get_max_threads());
  }
  return omp_get_max_threads();
}

namespace {

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > LLONG_MAX / b) return LLONG_MAX;
  return a * b;
}

long long sat_add(long long a, long long b) {
  if (a > LLONG_MAX - b) return LLONG_MAX;
  return a + b;
}

long long sat_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

struct Universe {
  std::vector<Item> items;       // reachable items, sorted
  std::vector<int> rank;         // item -> rank (or -1)
  long long r = 0;               // |items|

  explicit Universe(const GameSpec& game) {
    for (const auto& m : game.pool)
      items.insert(items.end(), m.items.begin(), m.items.end());
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    rank.assign(static_cast<std::size_t>(game.item_count), -1);
    for (std::size_t i = 0; i < items.size(); ++i) rank[static_cast<std::size_t>(items[i])] = static_cast<int>(i);
    r = static_cast<long long>(items.size());
  }
};

long long markov_table_count(const GameSpec& game) {
  long long t = 1;
  for (const auto& m : game.pool)
    t = sat_mul(t, sat_pow(static_cast<long long>(m.items.size()), game.horizon));
  return t;
}

// Final-layer win table over pick sequences, turn 0 in the most significant
// digit. This is the memoized play evaluation every search reads from.
std::vector<char> fill_win_table(const GameSpec& game, const Universe& u, int threads) {
  long long total = sat_pow(u.r, game.horizon);
  std::vector<char> table(static_cast<std::size_t>(total));
  int h = game.horizon;
#pragma omp parallel num_threads(threads)
  {
    std::vector<Item> picks(static_cast<std::size_t>(h));
#pragma omp for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
      long long rest = idx;
      for (int t = h - 1; t >= 0; --t) {
        picks[static_cast<std::size_t>(t)] = u.items[static_cast<std::size_t>(rest % u.r)];
        rest /= u.r;
      }
      table[static_cast<std::size_t>(idx)] = game.win_for_two.accepts(picks) ? 1 : 0;
    }
  }
  return table;
}

// layers[n][prefix]: Two wins from a length-n prefix with optimal play.
std::vector<std::vector<char>> backward_layers(const GameSpec& game, const Universe& u,
                                               std::vector<char> final_layer, int threads) {
  std::vector<std::vector<char>> layers(static_cast<std::size_t>(game.horizon) + 1);
  layers[static_cast<std::size_t>(game.horizon)] = std::move(final_layer);
  for (int n = game.horizon - 1; n >= 0; --n) {
    long long size = sat_pow(u.r, n);
    std::vector<char> layer(static_cast<std::size_t>(size));
    const std::vector<char>& next = layers[static_cast<std::size_t>(n) + 1];
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long s = 0; s < size; ++s) {
      bool two = true;
      for (const auto& m : game.pool) {
        bool reply = false;
        for (Item it : m.items)
          if (next[static_cast<std::size_t>(s * u.r + u.rank[static_cast<std::size_t>(it)])]) {
            reply = true;
            break;
          }
        if (!reply) {
          two = false;
          break;
        }
      }
      layer[static_cast<std::size_t>(s)] = two ? 1 : 0;
    }
    layers[static_cast<std::size_t>(n)] = std::move(layer);
  }
  return layers;
}

// Lowest-index full witness for Two from the value layers, over all of One's
// move sequences.
FullStrategyTwo two_witness(const GameSpec& game, const Universe& u,
                            const std::vector<std::vector<char>>& layers) {
  FullStrategyTwo out;
  struct Frame {
    std::vector<HistoryStep> past;
    long long enc = 0;
  };
  std::vector<Frame> stack = {{}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    int turn = static_cast<int>(f.past.size());
    if (turn == game.horizon) continue;
    for (int m = 0; m < static_cast<int>(game.pool.size()); ++m) {
      const auto& items = game.pool[static_cast<std::size_t>(m)].items;
      int chosen = -1;
      for (int i = 0; i < static_cast<int>(items.size()); ++i) {
        long long enc = f.enc * u.r + u.rank[static_cast<std::size_t>(items[static_cast<std::size_t>(i)])];
        if (layers[static_cast<std::size_t>(turn) + 1][static_cast<std::size_t>(enc)]) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) chosen = 0;  // unreachable when Two wins; keeps totality
      out.decisions[{f.past, m}] = chosen;
      Frame next = f;
      next.past.push_back({m, items[static_cast<std::size_t>(chosen)]});
      next.enc = f.enc * u.r + u.rank[static_cast<std::size_t>(items[static_cast<std::size_t>(chosen)])];
      stack.push_back(std::move(next));
    }
  }
  return out;
}

// Lowest-index full witness for One (winner side), keyed by Two's picks.
FullStrategyOne one_witness(const GameSpec& game, const Universe& u,
                            const std::vector<std::vector<char>>& layers) {
  FullStrategyOne out;
  struct Frame {
    std::vector<Item> picks;
    long long enc = 0;
  };
  std::vector<Frame> stack = {{}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    int turn = static_cast<int>(f.picks.size());
    if (turn == game.horizon) continue;
    if (out.decisions.count(f.picks)) continue;
    int chosen = -1;
    for (int m = 0; m < static_cast<int>(game.pool.size()) && chosen < 0; ++m) {
      bool all_lose = true;
      for (Item it : game.pool[static_cast<std::size_t>(m)].items)
        if (layers[static_cast<std::size_t>(turn) + 1]
                  [static_cast<std::size_t>(f.enc * u.r + u.rank[static_cast<std::size_t>(it)])]) {
          all_lose = false;
          break;
        }
      if (all_lose) chosen = m;
    }
    if (chosen < 0) chosen = 0;  // unreachable when One wins
    out.decisions[f.picks] = chosen;
    for (Item it : game.pool[static_cast<std::size_t>(chosen)].items) {
      Frame next = f;
      next.picks.push_back(it);
      next.enc = f.enc * u.r + u.rank[static_cast<std::size_t>(it)];
      stack.push_back(std::move(next));
    }
  }
  return out;
}

// Checks one Markov table against every move sequence of One; picks are
// table-determined, so the walk is a plain product over One's choices.
bool markov_table_wins(const GameSpec& game, const Universe& u, const std::vector<char>& final_layer,
                       const MarkovStrategyTwo& table) {
  auto rec = [&](auto&& self, int turn, long long enc) -> bool {
    if (turn == game.horizon) return final_layer[static_cast<std::size_t>(enc)] != 0;
    for (int m = 0; m < static_cast<int>(game.pool.size()); ++m) {
      Item it = game.pool[static_cast<std::size_t>(m)]
                    .items[static_cast<std::size_t>(table.at(m, turn))];
      if (!self(self, turn + 1, enc * u.r + u.rank[static_cast<std::size_t>(it)])) return false;
    }
    return true;
  };
  return rec(rec, 0, 0);
}

void decode_markov_into(const GameSpec& game, long long idx, MarkovStrategyTwo& t) {
  // Cell (m, turn) with m major, turn minor; cell 0 most significant.
  for (int m = static_cast<int>(game.pool.size()) - 1; m >= 0; --m)
    for (int turn = game.horizon - 1; turn >= 0; --turn) {
      long long base = static_cast<long long>(game.pool[static_cast<std::size_t>(m)].items.size());
      t.at(m, turn) = static_cast<int>(idx % base);
      idx /= base;
    }
}

MarkovStrategyTwo decode_markov(const GameSpec& game, long long idx) {
  MarkovStrategyTwo t;
  t.pool_size = static_cast<int>(game.pool.size());
  t.horizon = game.horizon;
  t.table.assign(static_cast<std::size_t>(t.pool_size) * game.horizon, 0);
  decode_markov_into(game, idx, t);
  return t;
}

std::optional<MarkovStrategyTwo> find_markov(const GameSpec& game, const Universe& u,
                                             const std::vector<char>& final_layer, int threads) {
  long long total = markov_table_count(game);
  long long best = LLONG_MAX;
#pragma omp parallel num_threads(threads)
  {
    long long local_best = LLONG_MAX;
    int nt = omp_get_num_threads();
    int tid = omp_get_thread_num();
    long long chunk = (total + nt - 1) / nt;
    long long lo = tid * chunk, hi = std::min(total, lo + chunk);
    MarkovStrategyTwo t;
    t.pool_size = static_cast<int>(game.pool.size());
    t.horizon = game.horizon;
    t.table.assign(static_cast<std::size_t>(t.pool_size) * game.horizon, 0);
    for (long long idx = lo; idx < hi; ++idx) {
      long long seen;
#pragma omp atomic read
      seen = best;
      if (seen < lo) break;  // an earlier chunk already won
      decode_markov_into(game, idx, t);
      if (markov_table_wins(game, u, final_layer, t)) {
        local_best = idx;
        break;
      }
    }
    if (local_best < LLONG_MAX) {
#pragma omp critical
      best = std::min(best, local_best);
    }
  }
  if (best == LLONG_MAX) return std::nullopt;
  return decode_markov(game, best);
}

// One beats every reply to the move sequence.
bool predetermined_wins(const GameSpec& game, const Universe& u,
                        const std::vector<char>& final_layer, const std::vector<int>& moves) {
  auto rec = [&](auto&& self, int turn, long long enc) -> bool {
    if (turn == game.horizon) return final_layer[static_cast<std::size_t>(enc)] == 0;
    for (Item it :
         game.pool[static_cast<std::size_t>(moves[static_cast<std::size_t>(turn)])].items)
      if (!self(self, turn + 1, enc * u.r + u.rank[static_cast<std::size_t>(it)])) return false;
    return true;
  };
  return rec(rec, 0, 0);
}

std::vector<int> decode_moves(const GameSpec& game, long long idx) {
  std::vector<int> moves(static_cast<std::size_t>(game.horizon));
  long long p = static_cast<long long>(game.pool.size());
  for (int t = game.horizon - 1; t >= 0; --t) {
    moves[static_cast<std::size_t>(t)] = static_cast<int>(idx % p);
    idx /= p;
  }
  return moves;
}

std::optional<PredeterminedStrategy> find_predetermined(const GameSpec& game, const Universe& u,
                                                        const std::vector<char>& final_layer,
                                                        int threads) {
  long long total = sat_pow(static_cast<long long>(game.pool.size()), game.horizon);
  long long best = LLONG_MAX;
#pragma omp parallel num_threads(threads)
  {
    long long local_best = LLONG_MAX;
    int nt = omp_get_num_threads();
    int tid = omp_get_thread_num();
    long long chunk = (total + nt - 1) / nt;
    long long lo = tid * chunk, hi = std::min(total, lo + chunk);
    for (long long idx = lo; idx < hi; ++idx) {
      long long seen;
#pragma omp atomic read
      seen = best;
      if (seen < lo) break;
      if (predetermined_wins(game, u, final_layer, decode_moves(game, idx))) {
        local_best = idx;
        break;
      }
    }
    if (local_best < LLONG_MAX) {
#pragma omp critical
      best = std::min(best, local_best);
    }
  }
  if (best == LLONG_MAX) return std::nullopt;
  return PredeterminedStrategy{decode_moves(game, best)};
}

}  // namespace

long long solve_cost_estimate(const GameSpec& game) {
  Universe u(game);
  long long table = sat_pow(u.r, game.horizon);
  long long items_total = 0;
  for (const auto& m : game.pool) items_total += static_cast<long long>(m.items.size());
  long long layers = sat_mul(table, items_total);
  long long pool_seqs = sat_pow(static_cast<long long>(game.pool.size()), game.horizon);
  long long markov = sat_mul(markov_table_count(game), sat_mul(pool_seqs, game.horizon));
  long long predet = sat_mul(pool_seqs, table);
  return sat_add(sat_add(table, layers), sat_add(markov, predet));
}

namespace {

SolveReport solve_impl(const GameSpec& game, const SolveOptions& opts, int threads) {
  game.validate();
  long long cost = solve_cost_estimate(game);
  if (cost > opts.budget) throw BudgetExceeded(cost);

  Universe u(game);
  std::vector<char> final_layer = fill_win_table(game, u, threads);
  auto layers = backward_layers(game, u, final_layer, threads);

  SolveReport rep;
  rep.nodes = cost;
  rep.winner_full = layers[0][0] ? Winner::Two : Winner::One;
  if (rep.winner_full == Winner::Two) {
    rep.two_full_witness = two_witness(game, u, layers);
    // A Markov win implies a full win, so only the winner's side is searched.
    auto markov = find_markov(game, u, layers[static_cast<std::size_t>(game.horizon)], threads);
    rep.two_has_markov = markov.has_value();
    rep.markov_witness = std::move(markov);
  } else {
    rep.one_full_witness = one_witness(game, u, layers);
    auto pre =
        find_predetermined(game, u, layers[static_cast<std::size_t>(game.horizon)], threads);
    rep.one_has_predetermined = pre.has_value();
    rep.predetermined_witness = std::move(pre);
  }
  return rep;
}

}  // namespace

SolveReport solve(const GameSpec& game, const SolveOptions& opts) {
  return solve_impl(game, opts, effective_threads(opts.threads));
}

// --- reference implementation -------------------------------------------------

namespace {

bool ref_two_wins(const GameSpec& game, std::vector<Item>& picks) {
  if (static_cast<int>(picks.size()) == game.horizon)
    return game.win_for_two.accepts(picks);
  for (const auto& m : game.pool) {
    bool reply = false;
    for (Item it : m.items) {
      picks.push_back(it);
      bool w = ref_two_wins(game, picks);
      picks.pop_back();
      if (w) {
        reply = true;
        break;
      }
    }
    if (!reply) return false;
  }
  return true;
}

void ref_two_witness(const GameSpec& game, std::vector<HistoryStep>& past, std::vector<Item>& picks,
                     FullStrategyTwo& out) {
  if (static_cast<int>(picks.size()) == game.horizon) return;
  for (int m = 0; m < static_cast<int>(game.pool.size()); ++m) {
    const auto& items = game.pool[static_cast<std::size_t>(m)].items;
    int chosen = -1;
    for (int i = 0; i < static_cast<int>(items.size()) && chosen < 0; ++i) {
      picks.push_back(items[static_cast<std::size_t>(i)]);
      if (ref_two_wins(game, picks)) chosen = i;
      picks.pop_back();
    }
    if (chosen < 0) chosen = 0;
    out.decisions[{past, m}] = chosen;
    past.push_back({m, items[static_cast<std::size_t>(chosen)]});
    picks.push_back(items[static_cast<std::size_t>(chosen)]);
    ref_two_witness(game, past, picks, out);
    picks.pop_back();
    past.pop_back();
  }
}

void ref_one_witness(const GameSpec& game, std::vector<Item>& picks, FullStrategyOne& out) {
  if (static_cast<int>(picks.size()) == game.horizon) return;
  if (out.decisions.count(picks)) return;
  int chosen = -1;
  for (int m = 0; m < static_cast<int>(game.pool.size()) && chosen < 0; ++m) {
    bool all_lose = true;
    for (Item it : game.pool[static_cast<std::size_t>(m)].items) {
      picks.push_back(it);
      bool w = ref_two_wins(game, picks);
      picks.pop_back();
      if (w) {
        all_lose = false;
        break;
      }
    }
    if (all_lose) chosen = m;
  }
  if (chosen < 0) chosen = 0;
  out.decisions[picks] = chosen;
  for (Item it : game.pool[static_cast<std::size_t>(chosen)].items) {
    picks.push_back(it);
    ref_one_witness(game, picks, out);
    picks.pop_back();
  }
}

bool ref_markov_wins(const GameSpec& game, const MarkovStrategyTwo& t, std::vector<Item>& picks) {
  int turn = static_cast<int>(picks.size());
  if (turn == game.horizon) return game.win_for_two.accepts(picks);
  for (int m = 0; m < static_cast<int>(game.pool.size()); ++m) {
    picks.push_back(
        game.pool[static_cast<std::size_t>(m)].items[static_cast<std::size_t>(t.at(m, turn))]);
    bool w = ref_markov_wins(game, t, picks);
    picks.pop_back();
    if (!w) return false;
  }
  return true;
}

bool ref_predetermined_wins(const GameSpec& game, const std::vector<int>& moves,
                            std::vector<Item>& picks) {
  int turn = static_cast<int>(picks.size());
  if (turn == game.horizon) return !game.win_for_two.accepts(picks);
  for (Item it : game.pool[static_cast<std::size_t>(moves[static_cast<std::size_t>(turn)])].items) {
    picks.push_back(it);
    bool w = ref_predetermined_wins(game, moves, picks);
    picks.pop_back();
    if (!w) return false;
  }
  return true;
}

}  // namespace

SolveReport solve_reference(const GameSpec& game, const SolveOptions& opts) {
  game.validate();
  long long cost = solve_cost_estimate(game);
  if (cost > opts.budget) throw BudgetExceeded(cost);

  SolveReport rep;
  rep.nodes = cost;
  std::vector<Item> picks;
  rep.winner_full = ref_two_wins(game, picks) ? Winner::Two : Winner::One;
  if (rep.winner_full == Winner::Two) {
    FullStrategyTwo w;
    std::vector<HistoryStep> past;
    ref_two_witness(game, past, picks, w);
    rep.two_full_witness = std::move(w);
    long long total = markov_table_count(game);
    for (long long idx = 0; idx < total; ++idx) {
      MarkovStrategyTwo t = decode_markov(game, idx);
      if (ref_markov_wins(game, t, picks)) {
        rep.two_has_markov = true;
        rep.markov_witness = std::move(t);
        break;
      }
    }
  } else {
    FullStrategyOne w;
    ref_one_witness(game, picks, w);
    rep.one_full_witness = std::move(w);
    long long total = sat_pow(static_cast<long long>(game.pool.size()), game.horizon);
    for (long long idx = 0; idx < total; ++idx) {
      std::vector<int> moves = decode_moves(game, idx);
      if (ref_predetermined_wins(game, moves, picks)) {
        rep.one_has_predetermined = true;
        rep.predetermined_witness = PredeterminedStrategy{std::move(moves)};
        break;
      }
    }
  }
  return rep;
}

bool s1_holds(const GameSpec& game, const SolveOptions& opts) {
  return !solve(game, opts).one_has_predetermined;
}

bool reports_equal(const SolveReport& a, const SolveReport& b) {
  auto markov_eq = [](const std::optional<MarkovStrategyTwo>& x,
                      const std::optional<MarkovStrategyTwo>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->pool_size == y->pool_size && x->horizon == y->horizon && x->table == y->table);
  };
  auto pre_eq = [](const std::optional<PredeterminedStrategy>& x,
                   const std::optional<PredeterminedStrategy>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || x->moves == y->moves;
  };
  auto one_eq = [](const std::optional<FullStrategyOne>& x, const std::optional<FullStrategyOne>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || x->decisions == y->decisions;
  };
  auto two_eq = [](const std::optional<FullStrategyTwo>& x, const std::optional<FullStrategyTwo>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || x->decisions == y->decisions;
  };
  return a.winner_full == b.winner_full && a.two_has_markov == b.two_has_markov &&
         a.one_has_predetermined == b.one_has_predetermined &&
         markov_eq(a.markov_witness, b.markov_witness) &&
         pre_eq(a.predetermined_witness, b.predetermined_witness) &&
         one_eq(a.one_full_witness, b.one_full_witness) &&
         two_eq(a.two_full_witness, b.two_full_witness) && a.nodes == b.nodes;
}

}  // namespace wb
