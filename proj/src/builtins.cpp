#include "workbench/builtins.hpp"

#include "workbench/errors.hpp"

#include <algorithm>

namespace wb {

std::optional<BuiltinTranslation> builtin_translation_from_name(const std::string& name) {
  if (name == "identity") return BuiltinTranslation::Identity;
  if (name == "covers_to_fan_tightness") return BuiltinTranslation::CoversToFanTightness;
  if (name == "dense_to_covers") return BuiltinTranslation::DenseToCovers;
  if (name == "nbhd_to_closed_discrete") return BuiltinTranslation::NeighborhoodsToClosedDiscrete;
  if (name == "w_game_transfer") return BuiltinTranslation::WGameTransfer;
  return std::nullopt;
}

std::string builtin_translation_name(BuiltinTranslation which) {
  switch (which) {
    case BuiltinTranslation::Identity: return "identity";
    case BuiltinTranslation::CoversToFanTightness: return "covers_to_fan_tightness";
    case BuiltinTranslation::DenseToCovers: return "dense_to_covers";
    case BuiltinTranslation::NeighborhoodsToClosedDiscrete: return "nbhd_to_closed_discrete";
    case BuiltinTranslation::WGameTransfer: return "w_game_transfer";
  }
  return "";
}

DeskRegistry make_default_registry() {
  FiniteSpace space = FiniteSpace::discrete(2);
  std::vector<PointSet> singletons = {0b01, 0b10};
  GridPackPtr pack = make_grid_pack(space, {Rat(-1), Rat(0), Rat(1)});
  return {std::move(space), singletons, singletons, std::move(pack), {Rat(1)}};
}

OpensUniverse opens_universe(const FiniteSpace& space) {
  OpensUniverse u{space, space.opens(), {}, };
  for (PointSet o : u.item_opens) u.item_labels.push_back(space.set_str(o));
  return u;
}

int OpensUniverse::item_of(PointSet mask) const {
  auto it = std::lower_bound(item_opens.begin(), item_opens.end(), mask);
  if (it == item_opens.end() || *it != mask) throw ValidationError("mask is not an open set");
  return static_cast<int>(it - item_opens.begin());
}

Move opens_move(const OpensUniverse& u, const std::vector<PointSet>& masks, std::string label) {
  Move m;
  m.label = std::move(label);
  for (PointSet mask : masks) m.items.push_back(u.item_of(mask));
  return m;
}

Move neighborhood_move(const OpensUniverse& u, PointSet a, bool allow_full) {
  std::vector<PointSet> masks;
  for (PointSet o : u.item_opens)
    if (o != 0 && (a & ~o) == 0 && (allow_full || o != u.space.full())) masks.push_back(o);
  return opens_move(u, masks, std::string(allow_full ? "N+" : "N") + u.space.set_str(a));
}

Move points_move(const FiniteSpace& space, PointSet mask, std::string label) {
  Move m;
  m.label = std::move(label);
  for (int p = 0; p < space.point_count(); ++p)
    if (mask >> p & 1) m.items.push_back(p);
  return m;
}

std::vector<std::string> point_labels(const FiniteSpace& space) {
  std::vector<std::string> out;
  for (int p = 0; p < space.point_count(); ++p) out.push_back(std::to_string(p));
  return out;
}

Move grid_ball_move(const FunctionGrid& grid, int center, PointSet a, const Rat& eps,
                    std::string label) {
  Move m;
  m.label = std::move(label);
  m.items = neighborhood_members(grid, {center, a, eps});
  return m;
}

std::vector<std::string> grid_labels(const FunctionGrid& grid) {
  std::vector<std::string> out;
  for (int m = 0; m < grid.member_count(); ++m) out.push_back(grid.member_label(m));
  return out;
}

namespace {

std::vector<FunctionNeighborhood> zero_test_family(const DeskRegistry& reg) {
  std::vector<FunctionNeighborhood> fam;
  for (PointSet a : reg.ideal_b)
    for (const Rat& eps : reg.eps_menu) fam.push_back({reg.pack->grid.zero_member(), a, eps});
  return fam;
}

GameSpec covers_game(const DeskRegistry& reg, const OpensUniverse& ou, int horizon,
                     WinCondition win, const std::string& name) {
  IdealFamily ideal(reg.space, reg.ideal_a);
  std::vector<std::vector<PointSet>> covers =
      all_a_covers(reg.space, ideal, reg.space.proper_opens().size());
  GameSpec g;
  g.horizon = horizon;
  g.item_count = static_cast<int>(ou.item_opens.size());
  g.item_labels = ou.item_labels;
  g.win_for_two = std::move(win);
  g.name = name;
  for (const auto& c : covers) {
    std::string label = "{";
    for (std::size_t i = 0; i < c.size(); ++i)
      label += (i ? "," : "") + reg.space.set_str(c[i]);
    label += "}";
    g.pool.push_back(opens_move(ou, c, std::move(label)));
  }
  return g;
}

GameSpec grid_game(const DeskRegistry& reg, int horizon, std::vector<Move> pool, WinCondition win,
                   const std::string& name) {
  GameSpec g;
  g.horizon = horizon;
  g.pool = std::move(pool);
  g.item_count = reg.pack->grid.member_count();
  g.item_labels = grid_labels(reg.pack->grid);
  g.win_for_two = std::move(win);
  g.name = name;
  return g;
}

// Sorted member ids that are constantly 1 outside some element of the cover.
std::vector<Item> one_off_cover_members(const FunctionGrid& grid, const FiniteSpace& space,
                                        const std::vector<PointSet>& cover_masks) {
  std::vector<Item> out;
  for (int m = 0; m < grid.member_count(); ++m) {
    bool qualifies = false;
    for (PointSet u : cover_masks) {
      bool ones_off = true;
      for (int p = 0; p < space.point_count() && ones_off; ++p)
        if (!(u >> p & 1) && grid.value(m, p) != Rat(1)) ones_off = false;
      if (ones_off) {
        qualifies = true;
        break;
      }
    }
    if (qualifies) out.push_back(m);
  }
  return out;
}

TranslationPair build_covers_to_fan_tightness(const DeskRegistry& reg) {
  const FunctionGrid& grid = reg.pack->grid;
  const int horizon = 4;
  OpensUniverse ou = opens_universe(reg.space);

  // Target: the fan-tightness game at 0 on the grid.
  std::vector<Move> pool_h;
  pool_h.push_back(Move{{grid.zero_member()}, "F0"});
  int up = grid.member_of({Rat(0), Rat(1)});
  int down = grid.member_of({Rat(1), Rat(0)});
  if (up < 0 || down < 0) throw UnregisteredUniverse("grid lacks the 0/1 valued members");
  std::vector<Item> pair_items = {std::min(up, down), std::max(up, down)};
  pool_h.push_back(Move{pair_items, "Fpair"});
  Move all{{}, "Fall"};
  for (int m = 0; m < grid.member_count(); ++m) all.items.push_back(m);
  pool_h.push_back(std::move(all));
  GameSpec game_h = grid_game(reg, horizon, std::move(pool_h),
                              win_cluster_at_zero(reg.pack, zero_test_family(reg)),
                              "fan-tightness-at-0");

  // Source: the covers game with the double-multiplicity target.
  GameSpec game_g =
      covers_game(reg, ou, horizon,
                  win_large_cover(reg.space, reg.ideal_b, ou.item_opens, 2), "a-covers-large");
  if (game_g.pool.empty()) throw UnregisteredUniverse("no a-covers on the registered space");

  TranslationPair pair;
  pair.name = builtin_translation_name(BuiltinTranslation::CoversToFanTightness);

  // t_one: family of small preimages, or the fixed cover when some member's
  // small preimage is the whole space.
  auto find_or_add_cover = [&](const std::vector<PointSet>& masks) {
    std::string label = "{";
    for (std::size_t i = 0; i < masks.size(); ++i)
      label += (i ? "," : "") + reg.space.set_str(masks[i]);
    label += "}";
    Move mv = opens_move(ou, masks, std::move(label));
    for (std::size_t i = 0; i < game_g.pool.size(); ++i)
      if (game_g.pool[i].items == mv.items) return static_cast<int>(i);
    game_g.pool.push_back(std::move(mv));
    return static_cast<int>(game_g.pool.size()) - 1;
  };

  pair.t_one.assign(horizon, std::vector<int>(game_h.pool.size(), 0));
  pair.t_two.assign(horizon, std::vector<std::vector<Item>>(
                                 static_cast<std::size_t>(game_g.item_count),
                                 std::vector<Item>(game_h.pool.size(), 0)));
  for (int n = 0; n < horizon; ++n) {
    for (std::size_t b = 0; b < game_h.pool.size(); ++b) {
      const auto& family = game_h.pool[b].items;
      int full_member = -1;
      for (Item m : family)
        if (small_preimage_points(grid, m, static_cast<unsigned>(n)) == reg.space.full()) {
          full_member = m;
          break;
        }
      if (full_member >= 0) {
        pair.t_one[static_cast<std::size_t>(n)][b] = 0;  // the fixed cover U0
        for (int x = 0; x < game_g.item_count; ++x)
          pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)][b] = full_member;
      } else {
        std::vector<PointSet> masks;
        for (Item m : family) {
          PointSet w = small_preimage_points(grid, m, static_cast<unsigned>(n));
          if (w != 0 && w != reg.space.full()) masks.push_back(w);
        }
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        pair.t_one[static_cast<std::size_t>(n)][b] = find_or_add_cover(masks);
        for (int x = 0; x < game_g.item_count; ++x) {
          Item chosen = grid.zero_member();
          for (Item m : family)
            if (small_preimage_points(grid, m, static_cast<unsigned>(n)) ==
                ou.item_opens[static_cast<std::size_t>(x)]) {
              chosen = m;
              break;
            }
          pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)][b] = chosen;
        }
      }
    }
  }
  pair.game_g = std::move(game_g);
  pair.game_h = std::move(game_h);
  return pair;
}

TranslationPair build_dense_to_covers(const DeskRegistry& reg) {
  const FunctionGrid& grid = reg.pack->grid;
  const int horizon = 2;
  OpensUniverse ou = opens_universe(reg.space);

  GameSpec game_h = covers_game(reg, ou, horizon,
                                win_a_cover(reg.space, reg.ideal_b, ou.item_opens), "a-covers");
  if (game_h.pool.empty()) throw UnregisteredUniverse("no a-covers on the registered space");

  // Source: dense selections in the function space, clustering at 0.
  std::vector<Move> pool_g;
  std::vector<std::vector<Item>> images;
  for (const auto& mv : game_h.pool) {
    std::vector<PointSet> masks;
    for (Item x : mv.items) masks.push_back(ou.item_opens[static_cast<std::size_t>(x)]);
    std::vector<Item> dense = one_off_cover_members(grid, reg.space, masks);
    images.push_back(dense);
    bool seen = false;
    for (const auto& existing : pool_g)
      if (existing.items == dense) seen = true;
    if (!seen) pool_g.push_back(Move{dense, "D(" + mv.label + ")"});
  }
  Move all{{}, "Dall"};
  for (int m = 0; m < grid.member_count(); ++m) all.items.push_back(m);
  pool_g.push_back(std::move(all));

  GameSpec game_g = grid_game(reg, horizon, std::move(pool_g),
                              win_cluster_at_zero(reg.pack, zero_test_family(reg)), "dense-sets");

  TranslationPair pair;
  pair.name = builtin_translation_name(BuiltinTranslation::DenseToCovers);
  pair.t_one.assign(horizon, std::vector<int>(game_h.pool.size(), 0));
  pair.t_two.assign(horizon, std::vector<std::vector<Item>>(
                                 static_cast<std::size_t>(game_g.item_count),
                                 std::vector<Item>(game_h.pool.size(), 0)));
  for (int n = 0; n < horizon; ++n)
    for (std::size_t b = 0; b < game_h.pool.size(); ++b) {
      for (std::size_t i = 0; i < game_g.pool.size(); ++i)
        if (game_g.pool[i].items == images[b]) {
          pair.t_one[static_cast<std::size_t>(n)][b] = static_cast<int>(i);
          break;
        }
      for (int m = 0; m < game_g.item_count; ++m) {
        Item chosen = game_h.pool[b].items.front();
        for (Item x : game_h.pool[b].items) {
          PointSet u = ou.item_opens[static_cast<std::size_t>(x)];
          bool ones_off = true;
          for (int p = 0; p < reg.space.point_count() && ones_off; ++p)
            if (!(u >> p & 1) && grid.value(m, p) != Rat(1)) ones_off = false;
          if (ones_off) {
            chosen = x;
            break;
          }
        }
        pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)][b] = chosen;
      }
    }
  pair.game_g = std::move(game_g);
  pair.game_h = std::move(game_h);
  return pair;
}

TranslationPair build_nbhd_to_closed_discrete(const DeskRegistry& reg) {
  const FunctionGrid& grid = reg.pack->grid;
  const int horizon = 2;
  OpensUniverse ou = opens_universe(reg.space);

  GameSpec game_g;
  game_g.horizon = horizon;
  game_g.item_count = static_cast<int>(ou.item_opens.size());
  game_g.item_labels = ou.item_labels;
  game_g.name = "neighborhood-filter";
  game_g.win_for_two = negate(win_large_cover(reg.space, reg.ideal_b, ou.item_opens, 2));
  for (PointSet a : reg.ideal_a) game_g.pool.push_back(neighborhood_move(ou, a, false));
  for (const auto& mv : game_g.pool)
    if (mv.items.empty())
      throw UnregisteredUniverse("some ideal member has no proper open neighborhood");

  int minus_one = grid.member_of(std::vector<Rat>(
      static_cast<std::size_t>(reg.space.point_count()), Rat(-1)));
  if (minus_one < 0) throw UnregisteredUniverse("grid lacks the constant -1 member");
  std::vector<Move> pool_h;
  struct BallInfo {
    PointSet a;
  };
  std::vector<BallInfo> balls;
  for (PointSet a : reg.ideal_a) {
    pool_h.push_back(grid_ball_move(grid, minus_one, a, Rat(1, 2),
                                    "[-1;" + reg.space.set_str(a) + ",1/2]"));
    balls.push_back({a});
  }
  GameSpec game_h = grid_game(reg, horizon, std::move(pool_h),
                              win_cd_surrogate(reg.pack, reg.ideal_b), "closed-discrete-balls");

  TranslationPair pair;
  pair.name = builtin_translation_name(BuiltinTranslation::NeighborhoodsToClosedDiscrete);
  pair.t_one.assign(horizon, std::vector<int>(game_h.pool.size(), 0));
  pair.t_two.assign(horizon, std::vector<std::vector<Item>>(
                                 static_cast<std::size_t>(game_g.item_count),
                                 std::vector<Item>(game_h.pool.size(), 0)));
  for (int n = 0; n < horizon; ++n)
    for (std::size_t b = 0; b < game_h.pool.size(); ++b) {
      pair.t_one[static_cast<std::size_t>(n)][b] = static_cast<int>(b);
      PointSet a = balls[b].a;
      for (int x = 0; x < game_g.item_count; ++x) {
        PointSet u = ou.item_opens[static_cast<std::size_t>(x)];
        Item chosen = game_h.pool[b].items.front();
        // A-normality witness: the lowest open V with a <= V <= cl(V) <= u.
        PointSet v = 0;
        bool found = false;
        for (PointSet cand : reg.space.opens())
          if ((a & ~cand) == 0 && (reg.space.closure(cand) & ~u) == 0) {
            v = cand;
            found = true;
            break;
          }
        if (found) {
          std::vector<Rat> vals;
          for (int p = 0; p < reg.space.point_count(); ++p)
            vals.push_back((v >> p & 1) ? Rat(-1) : Rat(n));
          int member = grid.member_of(vals);
          if (member < 0) throw UnregisteredUniverse("patched function off the grid");
          chosen = member;
        }
        pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)][b] = chosen;
      }
    }
  pair.game_g = std::move(game_g);
  pair.game_h = std::move(game_h);
  return pair;
}

TranslationPair build_w_game_transfer(const DeskRegistry& reg) {
  const FunctionGrid& grid = reg.pack->grid;
  const int horizon = 2;
  OpensUniverse ou = opens_universe(reg.space);

  std::vector<Move> pool_g;
  for (PointSet a : reg.ideal_a)
    pool_g.push_back(grid_ball_move(grid, grid.zero_member(), a, Rat(1),
                                    "[0;" + reg.space.set_str(a) + ",2^-n]"));
  GameSpec game_g =
      grid_game(reg, horizon, std::move(pool_g),
                negate(win_converge_to_zero(reg.pack, zero_test_family(reg), 0)), "w-game-at-0");

  GameSpec game_h;
  game_h.horizon = horizon;
  game_h.item_count = static_cast<int>(ou.item_opens.size());
  game_h.item_labels = ou.item_labels;
  game_h.name = "neighborhood-convergence";
  game_h.win_for_two = negate(win_gamma_cover(reg.space, reg.ideal_b, ou.item_opens, 0));
  for (PointSet a : reg.ideal_a) game_h.pool.push_back(neighborhood_move(ou, a, true));

  TranslationPair pair;
  pair.name = builtin_translation_name(BuiltinTranslation::WGameTransfer);
  pair.t_one.assign(horizon, std::vector<int>(game_h.pool.size(), 0));
  pair.t_two.assign(horizon, std::vector<std::vector<Item>>(
                                 static_cast<std::size_t>(game_g.item_count),
                                 std::vector<Item>(game_h.pool.size(), 0)));
  for (int n = 0; n < horizon; ++n)
    for (std::size_t b = 0; b < game_h.pool.size(); ++b) {
      pair.t_one[static_cast<std::size_t>(n)][b] = static_cast<int>(b);
      for (int m = 0; m < game_g.item_count; ++m) {
        PointSet w = small_preimage_points(grid, m, static_cast<unsigned>(n));
        Item chosen = game_h.pool[b].items.front();
        if (w != 0) {
          int candidate = ou.item_of(w);  // every subset is open here
          const auto& items = game_h.pool[b].items;
          if (std::find(items.begin(), items.end(), candidate) != items.end()) chosen = candidate;
        }
        pair.t_two[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)][b] = chosen;
      }
    }
  pair.game_g = std::move(game_g);
  pair.game_h = std::move(game_h);
  return pair;
}

}  // namespace

TranslationPair builtin_translation(BuiltinTranslation which, const DeskRegistry& reg) {
  switch (which) {
    case BuiltinTranslation::Identity: {
      OpensUniverse ou = opens_universe(reg.space);
      GameSpec g = covers_game(reg, ou, 2, win_a_cover(reg.space, reg.ideal_b, ou.item_opens),
                               "a-covers");
      if (g.pool.empty()) throw UnregisteredUniverse("no a-covers on the registered space");
      return identity_pair(g);
    }
    case BuiltinTranslation::CoversToFanTightness: return build_covers_to_fan_tightness(reg);
    case BuiltinTranslation::DenseToCovers: return build_dense_to_covers(reg);
    case BuiltinTranslation::NeighborhoodsToClosedDiscrete:
      return build_nbhd_to_closed_discrete(reg);
    case BuiltinTranslation::WGameTransfer: return build_w_game_transfer(reg);
  }
  throw UnregisteredUniverse("unknown builtin translation");
}

// --- duality suite ---------------------------------------------------------------

namespace {

bool pools_ok(const std::vector<Move>& pool, std::size_t max_moves) {
  if (pool.empty() || pool.size() > max_moves) return false;
  for (const auto& m : pool)
    if (m.items.empty()) return false;
  return true;
}

std::vector<Move> dedupe_moves(std::vector<Move> pool) {
  std::vector<Move> out;
  for (auto& m : pool) {
    bool seen = false;
    for (const auto& e : out)
      if (e.items == m.items) seen = true;
    if (!seen) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

DualitySuite duality_suite(int max_points, std::size_t max_moves, int max_horizon) {
  DualitySuite suite;
  for (int n = 1; n <= max_points; ++n) {
    auto spaces = FiniteSpace::enumerate_all(n);
    for (std::size_t si = 0; si < spaces.size(); ++si) {
      const FiniteSpace& space = spaces[si];
      std::string space_tag = "n" + std::to_string(n) + "t" + std::to_string(si);
      OpensUniverse ou = opens_universe(space);

      // Pairing (i): covers vs neighborhood families, per relaxed ideal.
      auto ideals = IdealFamily::enumerate_all(space);
      for (std::size_t ii = 0; ii < ideals.size(); ++ii) {
        const IdealFamily& ideal = ideals[ii];
        std::vector<Move> pool_h;
        for (PointSet a : ideal.members()) pool_h.push_back(neighborhood_move(ou, a, false));
        pool_h = dedupe_moves(std::move(pool_h));
        auto covers = all_a_covers(space, ideal, space.proper_opens().size());
        std::vector<Move> pool_g;
        for (const auto& c : covers) pool_g.push_back(opens_move(ou, c, ""));
        if (!pools_ok(pool_g, max_moves) || !pools_ok(pool_h, max_moves)) {
          suite.skipped += static_cast<long long>(3 * max_horizon);
          continue;
        }
        struct Target {
          std::string tag;
          WinCondition win;
        };
        std::vector<Target> targets;
        targets.push_back({"O", win_open_cover(space, ou.item_opens)});
        targets.push_back({"OA", win_a_cover(space, ideal.members(), ou.item_opens)});
        targets.push_back({"L2", win_large_cover(space, ideal.members(), ou.item_opens, 2)});
        for (auto& t : targets)
          for (int h = 1; h <= max_horizon; ++h) {
            DualityInstance inst;
            inst.pairing = DualityPairing::CoversVsNeighborhoods;
            inst.label = space_tag + "/i" + std::to_string(ii) + "/covers-vs-nbhd/" + t.tag +
                         "/h" + std::to_string(h);
            inst.game_g.horizon = h;
            inst.game_g.pool = pool_g;
            inst.game_g.item_count = static_cast<int>(ou.item_opens.size());
            inst.game_g.item_labels = ou.item_labels;
            inst.game_g.win_for_two = t.win;
            inst.game_g.name = inst.label + "/G";
            inst.game_h.horizon = h;
            inst.game_h.pool = pool_h;
            inst.game_h.item_count = static_cast<int>(ou.item_opens.size());
            inst.game_h.item_labels = ou.item_labels;
            inst.game_h.win_for_two = negate(t.win);
            inst.game_h.name = inst.label + "/H";
            suite.instances.push_back(std::move(inst));
          }
      }

      // Point-valued target menu shared by pairings (ii) and (iii).
      struct PointTarget {
        std::string tag;
        WinCondition win;
      };
      std::vector<PointTarget> point_targets;
      for (int x = 0; x < n; ++x)
        point_targets.push_back({"Om" + std::to_string(x), win_omega_at(space, x)});
      point_targets.push_back({"CD", win_closed_discrete(space)});
      point_targets.push_back({"D", win_dense(space)});

      auto make_point_game = [&](int h, const std::vector<Move>& pool, WinCondition win,
                                 const std::string& name) {
        GameSpec g;
        g.horizon = h;
        g.pool = pool;
        g.item_count = n;
        g.item_labels = point_labels(space);
        g.win_for_two = std::move(win);
        g.name = name;
        return g;
      };

      // Pairing (ii): dense sets vs proper opens.
      {
        std::vector<Move> pool_g;
        for (PointSet s = 1; s <= space.full(); ++s)
          if (is_dense(space, s)) pool_g.push_back(points_move(space, s, space.set_str(s)));
        std::vector<Move> pool_h;
        for (PointSet o : space.proper_opens())
          pool_h.push_back(points_move(space, o, space.set_str(o)));
        if (!pools_ok(pool_g, max_moves) || !pools_ok(pool_h, max_moves)) {
          suite.skipped += static_cast<long long>(point_targets.size() * max_horizon);
        } else {
          for (auto& t : point_targets)
            for (int h = 1; h <= max_horizon; ++h) {
              DualityInstance inst;
              inst.pairing = DualityPairing::DenseVsOpens;
              inst.label = space_tag + "/dense-vs-opens/" + t.tag + "/h" + std::to_string(h);
              inst.game_g = make_point_game(h, pool_g, t.win, inst.label + "/G");
              inst.game_h = make_point_game(h, pool_h, negate(t.win), inst.label + "/H");
              suite.instances.push_back(std::move(inst));
            }
        }
      }

      // Pairing (iii): clustering families at x vs neighborhoods of x.
      for (int x = 0; x < n; ++x) {
        std::vector<Move> pool_g;
        for (PointSet s = 1; s <= space.full(); ++s)
          if (clusters_at(space, s, x)) pool_g.push_back(points_move(space, s, space.set_str(s)));
        std::vector<Move> pool_h;
        for (PointSet o : space.proper_opens())
          if (o >> x & 1) pool_h.push_back(points_move(space, o, space.set_str(o)));
        if (!pools_ok(pool_g, max_moves) || !pools_ok(pool_h, max_moves)) {
          suite.skipped += static_cast<long long>(point_targets.size() * max_horizon);
          continue;
        }
        for (auto& t : point_targets)
          for (int h = 1; h <= max_horizon; ++h) {
            DualityInstance inst;
            inst.pairing = DualityPairing::ClusterVsNeighborhoodsAt;
            inst.label = space_tag + "/omega-vs-nbhd-at" + std::to_string(x) + "/" + t.tag + "/h" +
                         std::to_string(h);
            inst.game_g = make_point_game(h, pool_g, t.win, inst.label + "/G");
            inst.game_h = make_point_game(h, pool_h, negate(t.win), inst.label + "/H");
            suite.instances.push_back(std::move(inst));
          }
      }
    }
  }
  return suite;
}

}  // namespace wb
