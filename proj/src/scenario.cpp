#include "workbench/scenario.hpp"

#include "workbench/analyzers.hpp"
#include "workbench/errors.hpp"

#include <chrono>
#include <optional>
#include <algorithm>
#include <fstream>
#include <sstream>

namespace wb {

// --- codecs -------------------------------------------------------------------

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw ParseError("rational", "expected an integer or a \"p/q\" string");
}

Json mask_to_json(PointSet mask, int point_count) {
  Json arr = Json::array();
  for (int p = 0; p < point_count; ++p)
    if (mask >> p & 1) arr.push_back(p);
  return arr;
}

PointSet mask_from_json(const Json& j, int point_count) {
  if (!j.is_array()) throw ParseError("set", "expected an array of points");
  PointSet mask = 0;
  for (const auto& e : j) {
    int p = e.get<int>();
    if (p < 0 || p >= point_count) throw ValidationError("point out of range");
    mask |= PointSet(1) << p;
  }
  return mask;
}

Json compact_set_to_json(const CompactSet& s) {
  Json arr = Json::array();
  for (const auto& iv : s.intervals()) arr.push_back({rat_to_json(iv.lo), rat_to_json(iv.hi)});
  return arr;
}

Json domain_subset_to_json(const DomainSubset& s) {
  Json arr = Json::array();
  for (const auto& p : s.pieces()) {
    Json piece;
    piece["lo"] = rat_to_json(p.lo);
    piece["hi"] = rat_to_json(p.hi);
    piece["lo_open"] = p.lo_open;
    piece["hi_open"] = p.hi_open;
    arr.push_back(std::move(piece));
  }
  return arr;
}

SetValuedMap map_from_json(const Json& j) {
  std::vector<Rat> xs;
  for (const auto& e : j.at("breakpoints")) xs.push_back(rat_from_json(e));
  if (j.contains("domain")) {
    if (j.at("domain").size() != 2 || xs.empty() ||
        rat_from_json(j.at("domain").at(0)) != xs.front() ||
        rat_from_json(j.at("domain").at(1)) != xs.back())
      throw ValidationError("map domain must match the outer breakpoints");
  }
  std::vector<CompactSet> sections;
  for (const auto& sec : j.at("sections")) {
    std::vector<Interval> ivs;
    for (const auto& iv : sec) ivs.push_back({rat_from_json(iv.at(0)), rat_from_json(iv.at(1))});
    sections.push_back(CompactSet(std::move(ivs)));
  }
  std::vector<std::vector<Band>> cells;
  for (const auto& cell : j.at("cells")) {
    std::vector<Band> bands;
    for (const auto& b : cell) {
      Affine lower{rat_from_json(b.at("lower").at(0)), rat_from_json(b.at("lower").at(1))};
      Affine upper{rat_from_json(b.at("upper").at(0)), rat_from_json(b.at("upper").at(1))};
      bands.push_back({lower, upper});
    }
    cells.push_back(std::move(bands));
  }
  return SetValuedMap(std::move(xs), std::move(sections), std::move(cells));
}

Json map_to_json(const SetValuedMap& m) {
  Json j;
  j["domain"] = {rat_to_json(m.domain_lo()), rat_to_json(m.domain_hi())};
  Json xs = Json::array();
  for (const auto& x : m.breakpoints()) xs.push_back(rat_to_json(x));
  j["breakpoints"] = std::move(xs);
  Json sections = Json::array();
  for (const auto& s : m.sections()) sections.push_back(compact_set_to_json(s));
  j["sections"] = std::move(sections);
  Json cells = Json::array();
  for (const auto& cell : m.cells()) {
    Json bands = Json::array();
    for (const auto& b : cell) {
      Json band;
      band["lower"] = {rat_to_json(b.lower.slope), rat_to_json(b.lower.intercept)};
      band["upper"] = {rat_to_json(b.upper.slope), rat_to_json(b.upper.intercept)};
      bands.push_back(std::move(band));
    }
    cells.push_back(std::move(bands));
  }
  j["cells"] = std::move(cells);
  return j;
}

namespace {

Json markov_to_json(const GameSpec& game, const MarkovStrategyTwo& t) {
  Json rows = Json::array();
  for (int m = 0; m < t.pool_size; ++m)
    for (int turn = 0; turn < t.horizon; ++turn) {
      Json row;
      row["move"] = game.pool[static_cast<std::size_t>(m)].label;
      row["turn"] = turn;
      int idx = t.at(m, turn);
      row["pick"] = game.item_labels[static_cast<std::size_t>(
          game.pool[static_cast<std::size_t>(m)].items[static_cast<std::size_t>(idx)])];
      rows.push_back(std::move(row));
    }
  return rows;
}

Json full_two_to_json(const GameSpec& game, const FullStrategyTwo& t) {
  Json rows = Json::array();
  for (const auto& [key, idx] : t.decisions) {
    Json row;
    Json past = Json::array();
    for (const auto& step : key.first) {
      past.push_back({game.pool[static_cast<std::size_t>(step.move)].label,
                      game.item_labels[static_cast<std::size_t>(step.pick)]});
    }
    row["past"] = std::move(past);
    row["move"] = game.pool[static_cast<std::size_t>(key.second)].label;
    row["pick"] = game.item_labels[static_cast<std::size_t>(
        game.pool[static_cast<std::size_t>(key.second)].items[static_cast<std::size_t>(idx)])];
    rows.push_back(std::move(row));
  }
  return rows;
}

Json full_one_to_json(const GameSpec& game, const FullStrategyOne& t) {
  Json rows = Json::array();
  for (const auto& [picks, move] : t.decisions) {
    Json row;
    Json past = Json::array();
    for (Item it : picks) past.push_back(game.item_labels[static_cast<std::size_t>(it)]);
    row["picks"] = std::move(past);
    row["move"] = game.pool[static_cast<std::size_t>(move)].label;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json solve_report_to_json(const GameSpec& game, const SolveReport& rep) {
  Json j;
  j["game"] = game.name;
  j["winner_full"] = rep.winner_full == Winner::One ? "One" : "Two";
  j["two_has_markov"] = rep.two_has_markov;
  j["one_has_predetermined"] = rep.one_has_predetermined;
  j["nodes"] = rep.nodes;
  if (rep.markov_witness) j["markov_witness"] = markov_to_json(game, *rep.markov_witness);
  if (rep.predetermined_witness) {
    Json moves = Json::array();
    for (int m : rep.predetermined_witness->moves)
      moves.push_back(game.pool[static_cast<std::size_t>(m)].label);
    j["predetermined_witness"] = std::move(moves);
  }
  if (rep.two_full_witness) j["two_full_witness"] = full_two_to_json(game, *rep.two_full_witness);
  if (rep.one_full_witness) j["one_full_witness"] = full_one_to_json(game, *rep.one_full_witness);
  return j;
}

// --- scenario parsing ------------------------------------------------------------

Scenario Scenario::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open scenario file");
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
  return parse(doc);
}

Scenario Scenario::parse(const Json& doc) {
  Scenario s;
  s.parse_impl(doc);
  return s;
}

const FiniteSpace& Scenario::space(const std::string& name) const {
  auto it = spaces_.find(name);
  if (it == spaces_.end()) throw ValidationError("unknown space '" + name + "'");
  return it->second;
}
const IdealFamily& Scenario::ideal(const std::string& name) const {
  auto it = ideals_.find(name);
  if (it == ideals_.end()) throw ValidationError("unknown ideal '" + name + "'");
  return it->second;
}
GridPackPtr Scenario::grid(const std::string& name) const {
  auto it = grids_.find(name);
  if (it == grids_.end()) throw ValidationError("unknown grid '" + name + "'");
  return it->second;
}
const SetValuedMap& Scenario::map(const std::string& name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw ValidationError("unknown map '" + name + "'");
  return it->second;
}
const MapUniverse& Scenario::universe(const std::string& name) const {
  auto it = universes_.find(name);
  if (it == universes_.end()) throw ValidationError("unknown universe '" + name + "'");
  return it->second;
}
const GameSpec& Scenario::game(const std::string& name) const {
  auto it = games_.find(name);
  if (it == games_.end()) throw ValidationError("unknown game '" + name + "'");
  return it->second;
}
const TranslationPair& Scenario::translation(const std::string& name) const {
  auto it = translations_.find(name);
  if (it == translations_.end()) throw ValidationError("unknown translation '" + name + "'");
  return it->second;
}
const DualityInstance& Scenario::duality(const std::string& name) const {
  auto it = dualities_.find(name);
  if (it == dualities_.end()) throw ValidationError("unknown duality instance '" + name + "'");
  return it->second;
}

namespace {

struct GameItems {
  enum class Kind { Opens, Points, Grid, Abstract } kind = Kind::Abstract;
  const FiniteSpace* space = nullptr;
  GridPackPtr pack;
  std::optional<OpensUniverse> opens;
  std::vector<std::string> labels;
  int count = 0;
};

std::vector<FunctionNeighborhood> test_family_from_json(const Json& j, const GridPackPtr& pack) {
  std::vector<FunctionNeighborhood> fam;
  for (const auto& e : j) {
    FunctionNeighborhood n;
    n.center = pack->grid.zero_member();
    n.a = mask_from_json(e.at("a"), pack->space.point_count());
    n.epsilon = rat_from_json(e.at("eps"));
    fam.push_back(n);
  }
  return fam;
}

}  // namespace

void Scenario::parse_impl(const Json& doc) {
  if (!doc.is_object()) throw ParseError("scenario", "top level must be an object");

  const Json spaces_doc = doc.value("spaces", Json::object());
  for (const auto& [name, j] : spaces_doc.items()) {
    int n = j.at("points").get<int>();
    std::vector<PointSet> opens;
    for (const auto& o : j.at("opens")) opens.push_back(mask_from_json(o, n));
    spaces_.emplace(name, FiniteSpace(n, std::move(opens)));
  }

  const Json ideals_doc = doc.value("ideals", Json::object());
  for (const auto& [name, j] : ideals_doc.items()) {
    const FiniteSpace& sp = space(j.at("space").get<std::string>());
    std::vector<PointSet> members;
    for (const auto& m : j.at("members")) members.push_back(mask_from_json(m, sp.point_count()));
    bool validate = j.value("validate", true);
    ideals_.emplace(name, IdealFamily(sp, std::move(members), validate));
  }

  const Json grids_doc = doc.value("grids", Json::object());
  for (const auto& [name, j] : grids_doc.items()) {
    const FiniteSpace& sp = space(j.at("space").get<std::string>());
    std::vector<Rat> values;
    for (const auto& v : j.at("values")) values.push_back(rat_from_json(v));
    grids_.emplace(name, make_grid_pack(sp, std::move(values)));
  }

  const Json maps_doc = doc.value("maps", Json::object());
  for (const auto& [name, j] : maps_doc.items()) maps_.emplace(name, map_from_json(j));

  const Json universes_doc = doc.value("universes", Json::object());
  for (const auto& [name, j] : universes_doc.items()) {
    std::vector<std::string> names;
    std::vector<SetValuedMap> members;
    for (const auto& m : j.at("maps")) {
      names.push_back(m.get<std::string>());
      members.push_back(map(names.back()));
    }
    std::string zero = j.at("zero").get<std::string>();
    auto pos = std::find(names.begin(), names.end(), zero);
    if (pos == names.end()) throw ValidationError("universe zero must be a member");
    universes_.emplace(name, MapUniverse(std::move(names), std::move(members),
                                         static_cast<int>(pos - names.begin())));
  }

  const Json games_doc = doc.value("games", Json::object());
  for (const auto& [name, j] : games_doc.items()) {
    const Json& items = j.at("items");
    std::string kind = items.at("kind").get<std::string>();
    GameItems gi;
    if (kind == "opens") {
      gi.kind = GameItems::Kind::Opens;
      gi.space = &space(items.at("space").get<std::string>());
      gi.opens = opens_universe(*gi.space);
      gi.labels = gi.opens->item_labels;
      gi.count = static_cast<int>(gi.opens->item_opens.size());
    } else if (kind == "points") {
      gi.kind = GameItems::Kind::Points;
      gi.space = &space(items.at("space").get<std::string>());
      gi.labels = point_labels(*gi.space);
      gi.count = gi.space->point_count();
    } else if (kind == "grid") {
      gi.kind = GameItems::Kind::Grid;
      gi.pack = grid(items.at("grid").get<std::string>());
      gi.labels = grid_labels(gi.pack->grid);
      gi.count = gi.pack->grid.member_count();
    } else if (kind == "abstract") {
      gi.kind = GameItems::Kind::Abstract;
      for (const auto& l : items.at("labels")) gi.labels.push_back(l.get<std::string>());
      gi.count = static_cast<int>(gi.labels.size());
    } else {
      throw ValidationError("unknown item universe kind '" + kind + "'");
    }

    GameSpec g;
    g.horizon = j.at("horizon").get<int>();
    g.item_count = gi.count;
    g.item_labels = gi.labels;
    g.name = name;

    for (const auto& mv : j.at("pool")) {
      if (mv.contains("items")) {
        Move m;
        m.label = mv.value("label", "");
        for (const auto& e : mv.at("items")) {
          int id = e.get<int>();
          if (id < 0 || id >= gi.count) throw ValidationError("move item out of range");
          m.items.push_back(id);
        }
        g.pool.push_back(std::move(m));
        continue;
      }
      std::string cls = mv.at("class").get<std::string>();
      if (cls == "a_covers") {
        const IdealFamily& id = ideal(mv.at("ideal").get<std::string>());
        if (gi.kind != GameItems::Kind::Opens)
          throw ValidationError("a_covers pool needs an opens universe");
        std::size_t max_members = mv.value("max_members", gi.space->proper_opens().size());
        for (const auto& c : all_a_covers(*gi.space, id, max_members)) {
          std::string label = "{";
          for (std::size_t i = 0; i < c.size(); ++i)
            label += (i ? "," : "") + gi.space->set_str(c[i]);
          g.pool.push_back(opens_move(*gi.opens, c, label + "}"));
        }
      } else if (cls == "nbhd") {
        if (gi.kind != GameItems::Kind::Opens)
          throw ValidationError("nbhd pool needs an opens universe");
        PointSet a = mask_from_json(mv.at("set"), gi.space->point_count());
        g.pool.push_back(neighborhood_move(*gi.opens, a, mv.value("allow_full", false)));
      } else if (cls == "opens_move") {
        if (gi.kind != GameItems::Kind::Opens)
          throw ValidationError("opens_move needs an opens universe");
        std::vector<PointSet> masks;
        for (const auto& o : mv.at("opens")) masks.push_back(mask_from_json(o, gi.space->point_count()));
        g.pool.push_back(opens_move(*gi.opens, masks, mv.value("label", "")));
      } else if (cls == "points_move") {
        if (gi.kind != GameItems::Kind::Points)
          throw ValidationError("points_move needs a points universe");
        PointSet s = mask_from_json(mv.at("set"), gi.space->point_count());
        g.pool.push_back(points_move(*gi.space, s, mv.value("label", gi.space->set_str(s))));
      } else if (cls == "ball") {
        if (gi.kind != GameItems::Kind::Grid) throw ValidationError("ball needs a grid universe");
        std::vector<Rat> center;
        for (const auto& v : mv.at("center")) center.push_back(rat_from_json(v));
        int c = gi.pack->grid.member_of(center);
        if (c < 0) throw ValidationError("ball center off the grid");
        PointSet a = mask_from_json(mv.at("a"), gi.pack->space.point_count());
        Rat eps = rat_from_json(mv.at("eps"));
        g.pool.push_back(grid_ball_move(gi.pack->grid, c, a, eps, mv.value("label", "ball")));
      } else {
        throw ValidationError("unknown pool class '" + cls + "'");
      }
    }

    const Json& w = j.at("win");
    std::string cls = w.at("class").get<std::string>();
    WinCondition win;
    if (cls == "o_cover") {
      win = win_open_cover(*gi.space, gi.opens->item_opens);
    } else if (cls == "a_cover") {
      win = win_a_cover(*gi.space, ideal(w.at("ideal").get<std::string>()).members(),
                        gi.opens->item_opens);
    } else if (cls == "large_cover") {
      win = win_large_cover(*gi.space, ideal(w.at("ideal").get<std::string>()).members(),
                            gi.opens->item_opens, w.value("threshold", 2));
    } else if (cls == "gamma_cover") {
      win = win_gamma_cover(*gi.space, ideal(w.at("ideal").get<std::string>()).members(),
                            gi.opens->item_opens, w.value("tail", 0));
    } else if (cls == "dense") {
      win = win_dense(*gi.space);
    } else if (cls == "closed_discrete") {
      win = win_closed_discrete(*gi.space);
    } else if (cls == "omega_at") {
      win = win_omega_at(*gi.space, w.at("point").get<int>());
    } else if (cls == "gamma_at") {
      win = win_gamma_at(*gi.space, w.at("point").get<int>(), w.value("tail", 0));
    } else if (cls == "omega_zero") {
      win = win_cluster_at_zero(gi.pack, test_family_from_json(w.at("test_family"), gi.pack));
    } else if (cls == "gamma_zero") {
      win = win_converge_to_zero(gi.pack, test_family_from_json(w.at("test_family"), gi.pack),
                                 w.value("tail", 0));
    } else if (cls == "cd_surrogate") {
      win = win_cd_surrogate(gi.pack, ideal(w.at("ideal").get<std::string>()).members());
    } else if (cls == "table") {
      std::set<std::vector<Item>> winning;
      for (const auto& seq : w.at("winning"))
        winning.insert(std::vector<Item>(seq.begin(), seq.end()));
      win = win_table(std::move(winning));
    } else if (cls == "always") {
      win = win_always(w.value("value", true));
    } else {
      throw ValidationError("unknown win class '" + cls + "'");
    }
    g.win_for_two = w.value("negate", false) ? negate(std::move(win)) : std::move(win);
    g.validate();
    games_.emplace(name, std::move(g));
  }

  const Json translations_doc = doc.value("translations", Json::object());
  for (const auto& [name, j] : translations_doc.items()) {
    if (j.contains("builtin")) {
      auto which = builtin_translation_from_name(j.at("builtin").get<std::string>());
      if (!which) throw ValidationError("unknown builtin translation");
      DeskRegistry reg = make_default_registry();
      translations_.emplace(name, builtin_translation(*which, reg));
      continue;
    }
    TranslationPair pair;
    pair.name = name;
    pair.game_g = game(j.at("g").get<std::string>());
    pair.game_h = game(j.at("h").get<std::string>());
    for (const auto& row : j.at("t_one")) pair.t_one.push_back(row.get<std::vector<int>>());
    for (const auto& block : j.at("t_two")) {
      std::vector<std::vector<Item>> rows;
      for (const auto& row : block) rows.push_back(row.get<std::vector<Item>>());
      pair.t_two.push_back(std::move(rows));
    }
    pair.validate_shape();
    translations_.emplace(name, std::move(pair));
  }

  const Json dualities_doc = doc.value("dualities", Json::object());
  for (const auto& [name, j] : dualities_doc.items()) {
    DualityInstance inst;
    inst.label = name;
    std::string p = j.at("pairing").get<std::string>();
    if (p == "covers_vs_nbhd")
      inst.pairing = DualityPairing::CoversVsNeighborhoods;
    else if (p == "dense_vs_opens")
      inst.pairing = DualityPairing::DenseVsOpens;
    else if (p == "omega_vs_nbhd_at")
      inst.pairing = DualityPairing::ClusterVsNeighborhoodsAt;
    else
      throw ValidationError("unknown duality pairing '" + p + "'");
    inst.game_g = game(j.at("g").get<std::string>());
    inst.game_h = game(j.at("h").get<std::string>());
    dualities_.emplace(name, std::move(inst));
  }

  commands_ = doc.value("commands", Json::object());
}

// --- command execution ------------------------------------------------------------

namespace {

Json transcript_to_json(const GameSpec& game, const Transcript& t) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds)
    rounds.push_back({game.pool[static_cast<std::size_t>(r.move)].label,
                      game.item_labels[static_cast<std::size_t>(r.item)]});
  Json j;
  j["rounds"] = std::move(rounds);
  j["two_wins"] = t.two_wins;
  return j;
}

Json run_verify_translation(const TranslationPair& pair, const RunOptions& opts, int* exit_code) {
  Json j;
  j["pair"] = pair.name;
  j["game_g"] = pair.game_g.name;
  j["game_h"] = pair.game_h.name;
  ConditionIReport ci = check_condition_i(pair);
  j["condition_i"] = ci.ok;
  if (!ci.ok) j["condition_i_detail"] = ci.detail;
  ConditionIIReport cii = check_condition_ii(pair, opts.budget);
  j["condition_ii"] = cii.ok;
  j["condition_ii_plays"] = cii.plays;
  if (cii.counterexample) {
    Json cex;
    Json hm = Json::array();
    for (int b : cii.counterexample->h_moves)
      hm.push_back(pair.game_h.pool[static_cast<std::size_t>(b)].label);
    cex["h_moves"] = std::move(hm);
    Json gp = Json::array();
    for (Item x : cii.counterexample->g_picks)
      gp.push_back(pair.game_g.item_labels[static_cast<std::size_t>(x)]);
    cex["g_picks"] = std::move(gp);
    Json hp = Json::array();
    for (Item y : cii.counterexample->h_picks)
      hp.push_back(pair.game_h.item_labels[static_cast<std::size_t>(y)]);
    cex["h_picks"] = std::move(hp);
    j["counterexample"] = std::move(cex);
  }

  SolveOptions sopts{opts.budget, opts.threads};
  SolveReport rg = solve(pair.game_g, sopts);
  j["source_two_wins"] = rg.winner_full == Winner::Two;
  bool transfers_ok = true;
  if (rg.winner_full == Winner::Two && ci.ok && cii.ok) {
    if (rg.markov_witness) {
      MarkovStrategyTwo th = transfer_markov(pair, *rg.markov_witness);
      StrategyAudit audit = audit_two_strategy(pair.game_h, th);
      j["markov_transfer_wins_all"] = audit.wins_all;
      j["markov_transfer_plays"] = audit.plays;
      if (!audit.wins_all) {
        transfers_ok = false;
        j["markov_losing_play"] = transcript_to_json(pair.game_h, *audit.losing_play);
      }
    }
    FullStrategyTwo th = transfer_full(pair, *rg.two_full_witness);
    StrategyAudit audit = audit_two_strategy(pair.game_h, th);
    j["full_transfer_wins_all"] = audit.wins_all;
    j["full_transfer_plays"] = audit.plays;
    if (!audit.wins_all) {
      transfers_ok = false;
      j["full_losing_play"] = transcript_to_json(pair.game_h, *audit.losing_play);
    }
  }
  if (!ci.ok || !cii.ok || !transfers_ok) *exit_code = 4;
  return j;
}

Json run_analyze_map(const SetValuedMap& phi, const Json& cmd, const RunOptions& opts) {
  Json j;
  UscoCheck usco = is_usco(phi);
  j["usco"] = usco.ok;
  if (usco.witness) {
    j["usco_witness_x"] = rat_to_json(usco.witness->first);
    j["usco_witness_y"] = rat_to_json(usco.witness->second);
  }
  if (usco.ok) {
    j["minimal_usco"] = is_minimal_usco(phi);
    CuscoVerdict v = is_minimal_cusco(phi);
    j["minimal_cusco"] =
        v == CuscoVerdict::Yes ? "yes" : (v == CuscoVerdict::No ? "no" : "undecided");
    j["bound"] = rat_to_json(bounded_on_compact(phi));
  }
  if (cmd.contains("basics")) {
    std::vector<std::pair<Rat, Rat>> basics;
    for (const auto& b : cmd.at("basics"))
      basics.emplace_back(rat_from_json(b.at(0)), rat_from_json(b.at(1)));
    VietorisPreimage pre = vietoris_preimage(phi, basics);
    j["vietoris_preimage"] = domain_subset_to_json(pre.set);
    j["vietoris_preimage_open"] = pre.open;
    j["continuous_at_basics"] = pre.open;
  }
  if (!opts.csv_path.empty()) {
    std::ofstream csv(opts.csv_path);
    if (!csv) throw ValidationError("cannot open CSV output path");
    csv << "x,lo,hi\n";
    for (const auto& row : sample_bands(phi, cmd.value("samples_per_cell", 3)))
      csv << rat_str(row.x) << "," << rat_str(row.lo) << "," << rat_str(row.hi) << "\n";
    j["csv"] = opts.csv_path;
  }
  return j;
}

Json run_examples(const Json& cmd, const RunOptions& opts) {
  Json j;
  IndicatorCuscoReport ind = analyze_indicator_example();
  Json indicator;
  indicator["minimal_cusco"] = ind.minimal_cusco == CuscoVerdict::Yes
                                   ? "yes"
                                   : (ind.minimal_cusco == CuscoVerdict::No ? "no" : "undecided");
  indicator["continuous"] = ind.continuous;
  indicator["vietoris_preimage"] = domain_subset_to_json(ind.preimage.set);
  indicator["vietoris_preimage_open"] = ind.preimage.open;
  Json basics = Json::array();
  for (const auto& [lo, hi] : ind.basics) basics.push_back({rat_to_json(lo), rat_to_json(hi)});
  indicator["basics"] = std::move(basics);
  j["indicator_example"] = std::move(indicator);

  int n_trunc = cmd.value("n_trunc", 50);
  MidpointAugmentationReport mid = analyze_midpoint_augmentation(n_trunc);
  Json m;
  m["n_trunc"] = mid.n_trunc;
  m["sections_ok"] = mid.sections_ok;
  m["f_bar_a_section"] = compact_set_to_json(mid.f_bar_a_section);
  m["f_bar_mid_section"] = compact_set_to_json(mid.f_bar_mid_section);
  m["g_a_section"] = compact_set_to_json(mid.g_a_section);
  m["g_mid_section"] = compact_set_to_json(mid.g_mid_section);
  m["limit_section"] = compact_set_to_json(mid.limit_section);
  m["f_bar_truncation_minimal_usco"] = mid.f_bar_truncation_minimal_usco;
  m["f_bar_with_limit_usco"] = mid.f_bar_with_limit_usco;
  m["g_usco"] = mid.g_usco;
  m["witness_y"] = rat_to_json(mid.witness_y);
  m["witness_x_limit"] = rat_to_json(mid.witness_x_limit);
  Json seq = Json::array();
  for (const auto& x : mid.witness_sequence) seq.push_back(rat_to_json(x));
  m["witness_sequence"] = std::move(seq);
  j["midpoint_augmentation"] = std::move(m);

  if (!opts.csv_path.empty()) {
    PiecewiseFn f = SequenceFamily::truncated(n_trunc);
    SetValuedMap g = augment_midpoints(graph_closure(f));
    std::ofstream csv(opts.csv_path);
    if (!csv) throw ValidationError("cannot open CSV output path");
    csv << "x,lo,hi\n";
    for (const auto& row : sample_bands(g, 1))
      csv << rat_str(row.x) << "," << rat_str(row.lo) << "," << rat_str(row.hi) << "\n";
    j["csv"] = opts.csv_path;
  }
  return j;
}

}  // namespace

RunResult run_command(const Scenario& scenario, const std::string& command,
                      const RunOptions& opts) {
  auto started = std::chrono::steady_clock::now();
  RunResult result;
  Json& rep = result.report;
  rep["schema"] = "workbench-report-v1";
  rep["command"] = command;
  rep["seed"] = opts.seed;
  rep["budget"] = opts.budget;
  Json caveats = Json::array();

  try {
    const Json& cmds = scenario.commands();
    if (command == "solve") {
      const Json& cmd = cmds.at("solve");
      const GameSpec& g = scenario.game(cmd.at("game").get<std::string>());
      SolveReport sr = solve(g, SolveOptions{opts.budget, opts.threads});
      rep["results"] = solve_report_to_json(g, sr);
      caveats.push_back("finite-surrogate: finite pools and horizon stand in for the full game");
    } else if (command == "verify-duality") {
      const Json& cmd = cmds.at("verify_duality");
      const DualityInstance& inst = scenario.duality(cmd.at("instance").get<std::string>());
      DualityReport dr = verify_duality(inst, SolveOptions{opts.budget, opts.threads});
      Json j;
      j["instance"] = inst.label;
      j["report_g"] = solve_report_to_json(inst.game_g, dr.report_g);
      j["report_h"] = solve_report_to_json(inst.game_h, dr.report_h);
      j["one_g_iff_two_h"] = dr.one_g_iff_two_h;
      j["two_g_iff_one_h"] = dr.two_g_iff_one_h;
      j["pre_g_iff_markov_h"] = dr.pre_g_iff_markov_h;
      j["markov_g_iff_pre_h"] = dr.markov_g_iff_pre_h;
      j["all_hold"] = dr.all_hold;
      rep["results"] = std::move(j);
      caveats.push_back("finite-surrogate: duality verified on finite instantiations only");
      if (!dr.all_hold) result.exit_code = 4;
    } else if (command == "verify-translation") {
      const Json& cmd = cmds.at("verify_translation");
      const TranslationPair& pair = scenario.translation(cmd.at("pair").get<std::string>());
      rep["results"] = run_verify_translation(pair, opts, &result.exit_code);
      caveats.push_back("finite-surrogate: condition (ii) bounded by horizon and pools");
    } else if (command == "analyze-map") {
      const Json& cmd = cmds.at("analyze_map");
      const SetValuedMap& phi = scenario.map(cmd.at("map").get<std::string>());
      rep["results"] = run_analyze_map(phi, cmd, opts);
    } else if (command == "examples") {
      Json cmd = cmds.value("examples", Json::object());
      rep["results"] = run_examples(cmd, opts);
      caveats.push_back("finite-surrogate: sequence analysis uses a finite truncation plus the "
                        "declared limit section");
    } else if (command == "cof") {
      const Json& cmd = cmds.at("cof");
      const IdealFamily& a = scenario.ideal(cmd.at("a").get<std::string>());
      const IdealFamily& b = scenario.ideal(cmd.at("b").get<std::string>());
      Json j;
      j["cofinality"] = cofinality(a.members(), b.members());
      rep["results"] = std::move(j);
    } else {
      throw ValidationError("unknown command '" + command + "'");
    }
  } catch (const BudgetExceeded& e) {
    rep["error"] = e.what();
    result.exit_code = 3;
  } catch (const ParseError& e) {
    rep["error"] = e.what();
    result.exit_code = 2;
  } catch (const Error& e) {
    rep["error"] = e.what();
    result.exit_code = 2;
  } catch (const Json::exception& e) {
    rep["error"] = std::string("scenario: ") + e.what();
    result.exit_code = 2;
  }

  rep["caveats"] = std::move(caveats);
  auto elapsed = std::chrono::steady_clock::now() - started;
  rep["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return result;
}

}  // namespace wb
