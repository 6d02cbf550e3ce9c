#include "workbench/piecewise.hpp"

#include "workbench/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wb {

// --- DomainSubset ------------------------------------------------------------

DomainSubset::DomainSubset(std::vector<DomainPiece> pieces) : pieces_(std::move(pieces)) {
  for (auto& p : pieces_) {
    if (p.hi < p.lo) throw ValidationError("DomainPiece with hi < lo");
    if (p.lo == p.hi && (p.lo_open || p.hi_open)) throw ValidationError("degenerate open piece");
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const DomainPiece& a, const DomainPiece& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.lo_open != b.lo_open) return !a.lo_open;  // closed end first
    return a.hi < b.hi;
  });
  std::vector<DomainPiece> merged;
  for (const auto& p : pieces_) {
    if (merged.empty()) {
      merged.push_back(p);
      continue;
    }
    DomainPiece& last = merged.back();
    bool joins;
    if (p.lo < last.hi)
      joins = true;
    else if (p.lo == last.hi)
      joins = !(last.hi_open && p.lo_open);  // (a,b) followed by (b,c) stays split
    else
      joins = false;
    if (!joins) {
      merged.push_back(p);
      continue;
    }
    if (p.hi > last.hi) {
      last.hi = p.hi;
      last.hi_open = p.hi_open;
    } else if (p.hi == last.hi) {
      last.hi_open = last.hi_open && p.hi_open;
    }
    if (p.lo == last.lo) last.lo_open = last.lo_open && p.lo_open;
  }
  pieces_ = std::move(merged);
}

bool DomainSubset::contains(const Rat& x) const {
  for (const auto& p : pieces_) {
    if (x < p.lo || (x == p.lo && p.lo_open)) continue;
    if (x < p.hi || (x == p.hi && !p.hi_open)) return true;
  }
  return false;
}

bool DomainSubset::is_open_in(const Rat& dom_lo, const Rat& dom_hi) const {
  for (const auto& p : pieces_) {
    if (p.is_point()) {
      if (!(dom_lo == dom_hi)) return false;
      continue;
    }
    if (!p.lo_open && p.lo != dom_lo) return false;
    if (!p.hi_open && p.hi != dom_hi) return false;
  }
  return true;
}

std::string DomainSubset::str() const {
  if (pieces_.empty()) return "{}";
  std::ostringstream os;
  bool first = true;
  for (const auto& p : pieces_) {
    if (!first) os << " u ";
    first = false;
    if (p.is_point()) {
      os << "{" << rat_str(p.lo) << "}";
    } else {
      os << (p.lo_open ? "(" : "[") << rat_str(p.lo) << "," << rat_str(p.hi)
         << (p.hi_open ? ")" : "]");
    }
  }
  return os.str();
}

// --- PiecewiseFn -------------------------------------------------------------

namespace {

void check_breakpoints(const std::vector<Rat>& xs) {
  if (xs.empty()) throw ValidationError("empty breakpoint list");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) throw ValidationError("breakpoints must be strictly increasing");
}

std::size_t breakpoint_index(const std::vector<Rat>& xs, const Rat& x, bool* is_bp) {
  // Returns breakpoint index when x is a breakpoint, else the cell index.
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || x < xs.front() || x > xs.back())
    throw DomainMismatch("point " + rat_str(x) + " outside domain");
  if (*it == x) {
    *is_bp = true;
    return static_cast<std::size_t>(it - xs.begin());
  }
  *is_bp = false;
  return static_cast<std::size_t>(it - xs.begin()) - 1;
}

}  // namespace

PiecewiseFn::PiecewiseFn(std::vector<Rat> breakpoints, std::vector<Rat> values,
                         std::vector<Affine> cells)
    : xs_(std::move(breakpoints)), values_(std::move(values)), cells_(std::move(cells)) {
  check_breakpoints(xs_);
  if (values_.size() != xs_.size()) throw ValidationError("values/breakpoints size mismatch");
  if (cells_.size() + 1 != xs_.size()) throw ValidationError("cells/breakpoints size mismatch");
}

PiecewiseFn PiecewiseFn::constant(const Rat& lo, const Rat& hi, const Rat& c) {
  if (lo == hi) return PiecewiseFn({lo}, {c}, {});
  return PiecewiseFn({lo, hi}, {c, c}, {Affine{0, c}});
}

PiecewiseFn PiecewiseFn::indicator(const Rat& dom_lo, const Rat& dom_hi, const Rat& set_lo,
                                   const Rat& set_hi) {
  if (!(dom_lo <= set_lo && set_lo <= set_hi && set_hi <= dom_hi) || dom_lo == dom_hi)
    throw ValidationError("indicator set must sit inside a non-degenerate domain");
  std::set<Rat> pts = {dom_lo, dom_hi, set_lo, set_hi};
  std::vector<Rat> xs(pts.begin(), pts.end());
  std::vector<Rat> values;
  std::vector<Affine> cells;
  auto inside = [&](const Rat& x) { return set_lo <= x && x <= set_hi; };
  for (const auto& x : xs) values.push_back(inside(x) ? 1 : 0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    cells.push_back(Affine{0, inside((xs[i] + xs[i + 1]) / 2) ? Rat(1) : Rat(0)});
  return PiecewiseFn(std::move(xs), std::move(values), std::move(cells));
}

Rat PiecewiseFn::eval(const Rat& x) const {
  bool is_bp = false;
  std::size_t i = breakpoint_index(xs_, x, &is_bp);
  return is_bp ? values_[i] : cells_[i].at(x);
}

Rat PiecewiseFn::left_limit(std::size_t i) const {
  if (i == 0 || i >= xs_.size()) throw ValidationError("left_limit index");
  return cells_[i - 1].at(xs_[i]);
}

Rat PiecewiseFn::right_limit(std::size_t i) const {
  if (i + 1 >= xs_.size()) throw ValidationError("right_limit index");
  return cells_[i].at(xs_[i]);
}

PiecewiseFn PiecewiseFn::refined(const std::vector<Rat>& extra_points) const {
  std::set<Rat> pts(xs_.begin(), xs_.end());
  for (const auto& x : extra_points)
    if (x > domain_lo() && x < domain_hi()) pts.insert(x);
  std::vector<Rat> xs(pts.begin(), pts.end());
  std::vector<Rat> values;
  std::vector<Affine> cells;
  for (const auto& x : xs) values.push_back(eval(x));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    bool is_bp = false;
    cells.push_back(cells_[breakpoint_index(xs_, mid, &is_bp)]);
  }
  return PiecewiseFn(std::move(xs), std::move(values), std::move(cells));
}

bool PiecewiseFn::operator==(const PiecewiseFn& other) const {
  if (domain_lo() != other.domain_lo() || domain_hi() != other.domain_hi()) return false;
  PiecewiseFn a = refined(other.xs_);
  PiecewiseFn b = other.refined(xs_);
  return a.xs_ == b.xs_ && a.values_ == b.values_ && a.cells_ == b.cells_;
}

// --- SetValuedMap ------------------------------------------------------------

namespace {

// Canonicalizes bands on (lo,hi): sorts, merges bands overlapping along the
// whole cell, rejects partially crossing pairs.
std::vector<Band> canonical_bands(std::vector<Band> bands, const Rat& lo, const Rat& hi) {
  if (bands.empty()) throw ValidationError("cell with no bands");
  Rat mid = (lo + hi) / 2;
  for (const auto& b : bands)
    if (b.lower.at(lo) > b.upper.at(lo) || b.lower.at(hi) > b.upper.at(hi))
      throw ValidationError("band with lower above upper");
  std::sort(bands.begin(), bands.end(), [&](const Band& a, const Band& b) {
    Rat la = a.lower.at(mid), lb = b.lower.at(mid);
    if (la != lb) return la < lb;
    return a.upper.at(mid) < b.upper.at(mid);
  });
  auto leq_on_cell = [&](const Affine& f, const Affine& g) {
    return f.at(lo) <= g.at(lo) && f.at(hi) <= g.at(hi);
  };
  std::vector<Band> merged;
  for (const auto& b : bands) {
    if (merged.empty()) {
      merged.push_back(b);
      continue;
    }
    Band& last = merged.back();
    bool overlap_all = leq_on_cell(b.lower, last.upper);
    bool disjoint_all = leq_on_cell(last.upper, b.lower);
    if (overlap_all) {
      if (!leq_on_cell(last.lower, b.lower)) throw ValidationError("crossing bands in a cell");
      if (leq_on_cell(last.upper, b.upper))
        last.upper = b.upper;
      else if (!leq_on_cell(b.upper, last.upper))
        throw ValidationError("crossing bands in a cell");
    } else if (disjoint_all) {
      merged.push_back(b);
    } else {
      throw ValidationError("crossing bands in a cell");
    }
  }
  return merged;
}

}  // namespace

SetValuedMap::SetValuedMap(std::vector<Rat> breakpoints, std::vector<CompactSet> sections,
                           std::vector<std::vector<Band>> cells)
    : xs_(std::move(breakpoints)), sections_(std::move(sections)), cells_(std::move(cells)) {
  check_breakpoints(xs_);
  if (sections_.size() != xs_.size()) throw ValidationError("sections/breakpoints size mismatch");
  if (cells_.size() + 1 != xs_.size()) throw ValidationError("cells/breakpoints size mismatch");
  for (std::size_t i = 0; i < cells_.size(); ++i)
    cells_[i] = canonical_bands(std::move(cells_[i]), xs_[i], xs_[i + 1]);
}

SetValuedMap SetValuedMap::constant(const Rat& lo, const Rat& hi, const CompactSet& value) {
  if (lo == hi) return SetValuedMap({lo}, {value}, {});
  std::vector<Band> bands;
  for (const auto& iv : value.intervals())
    bands.push_back(Band{Affine{0, iv.lo}, Affine{0, iv.hi}});
  return SetValuedMap({lo, hi}, {value, value}, {bands});
}

CompactSet SetValuedMap::section_at(const Rat& x) const {
  bool is_bp = false;
  std::size_t i = breakpoint_index(xs_, x, &is_bp);
  if (is_bp) return sections_[i];
  std::vector<Interval> ivs;
  for (const auto& b : cells_[i]) ivs.push_back({b.lower.at(x), b.upper.at(x)});
  return CompactSet(std::move(ivs));
}

SetValuedMap SetValuedMap::refined(const std::vector<Rat>& extra_points) const {
  std::set<Rat> pts(xs_.begin(), xs_.end());
  for (const auto& x : extra_points)
    if (x > domain_lo() && x < domain_hi()) pts.insert(x);
  std::vector<Rat> xs(pts.begin(), pts.end());
  std::vector<CompactSet> sections;
  std::vector<std::vector<Band>> cells;
  for (const auto& x : xs) sections.push_back(section_at(x));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    bool is_bp = false;
    cells.push_back(cells_[breakpoint_index(xs_, mid, &is_bp)]);
  }
  return SetValuedMap(std::move(xs), std::move(sections), std::move(cells));
}

bool SetValuedMap::operator==(const SetValuedMap& other) const {
  if (domain_lo() != other.domain_lo() || domain_hi() != other.domain_hi()) return false;
  SetValuedMap a = refined(other.xs_);
  SetValuedMap b = other.refined(xs_);
  return a.xs_ == b.xs_ && a.sections_ == b.sections_ && a.cells_ == b.cells_;
}

// --- constructions -----------------------------------------------------------

SetValuedMap graph_closure(const PiecewiseFn& f) {
  const auto& xs = f.breakpoints();
  std::vector<CompactSet> sections;
  std::vector<std::vector<Band>> cells;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Interval> pts = {{f.values()[i], f.values()[i]}};
    if (i > 0) {
      Rat l = f.left_limit(i);
      pts.push_back({l, l});
    }
    if (i + 1 < xs.size()) {
      Rat r = f.right_limit(i);
      pts.push_back({r, r});
    }
    sections.push_back(CompactSet(std::move(pts)));
  }
  for (const auto& c : f.cells()) cells.push_back({Band{c, c}});
  return SetValuedMap(xs, std::move(sections), std::move(cells));
}

SetValuedMap convexify(const SetValuedMap& phi) {
  std::vector<CompactSet> sections;
  for (const auto& s : phi.sections()) sections.push_back(s.hull());
  std::vector<std::vector<Band>> cells;
  for (const auto& bands : phi.cells())
    cells.push_back({Band{bands.front().lower, bands.back().upper}});
  return SetValuedMap(phi.breakpoints(), std::move(sections), std::move(cells));
}

PiecewiseFn min_selection(const SetValuedMap& phi) {
  std::vector<Rat> values;
  std::vector<Affine> cells;
  for (const auto& s : phi.sections()) values.push_back(s.min());
  for (const auto& bands : phi.cells()) cells.push_back(bands.front().lower);
  return PiecewiseFn(phi.breakpoints(), std::move(values), std::move(cells));
}

PiecewiseFn max_selection(const SetValuedMap& phi) {
  std::vector<Rat> values;
  std::vector<Affine> cells;
  for (const auto& s : phi.sections()) values.push_back(s.max());
  for (const auto& bands : phi.cells()) cells.push_back(bands.back().upper);
  return PiecewiseFn(phi.breakpoints(), std::move(values), std::move(cells));
}

// --- decision procedures -------------------------------------------------------

namespace {

// First point of [lo,hi] missing from s, if any.
std::optional<Rat> uncovered_point(const CompactSet& s, const Rat& lo, const Rat& hi) {
  if (!s.contains(lo)) return lo;
  if (s.contains_interval(lo, hi)) return std::nullopt;
  // lo is covered by some piece [c,d] with d < hi; a gap follows.
  for (std::size_t j = 0; j < s.intervals().size(); ++j) {
    const auto& iv = s.intervals()[j];
    if (iv.lo <= lo && lo <= iv.hi) {
      Rat next = (j + 1 < s.intervals().size()) ? s.intervals()[j + 1].lo : hi;
      return (iv.hi + rat_min(next, hi)) / 2;
    }
  }
  return lo;  // unreachable
}

}  // namespace

UscoCheck is_usco(const SetValuedMap& phi) {
  const auto& xs = phi.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto check_side = [&](const std::vector<Band>& bands) -> std::optional<Rat> {
      for (const auto& b : bands) {
        auto bad = uncovered_point(phi.sections()[i], b.lower.at(xs[i]), b.upper.at(xs[i]));
        if (bad) return bad;
      }
      return std::nullopt;
    };
    if (i > 0)
      if (auto bad = check_side(phi.cells()[i - 1])) return {false, std::pair{xs[i], *bad}};
    if (i + 1 < xs.size())
      if (auto bad = check_side(phi.cells()[i])) return {false, std::pair{xs[i], *bad}};
  }
  return {true, std::nullopt};
}

QuasiCheck is_quasicontinuous(const PiecewiseFn& f) {
  const auto& xs = f.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool ok = false;
    if (i > 0 && f.values()[i] == f.left_limit(i)) ok = true;
    if (i + 1 < xs.size() && f.values()[i] == f.right_limit(i)) ok = true;
    if (xs.size() == 1) ok = true;
    if (!ok) return {false, xs[i]};
  }
  return {true, std::nullopt};
}

bool is_subcontinuous(const PiecewiseFn&) { return true; }

bool is_minimal_usco(const SetValuedMap& phi) {
  if (!is_usco(phi).ok) throw NotUsco("is_minimal_usco requires an usco map");
  PiecewiseFn g = min_selection(phi);
  return is_quasicontinuous(g).ok && is_subcontinuous(g) && graph_closure(g) == phi;
}

bool convex_valued(const SetValuedMap& phi) {
  for (const auto& s : phi.sections())
    if (s.intervals().size() != 1) return false;
  for (const auto& bands : phi.cells())
    if (bands.size() != 1) return false;
  return true;
}

CuscoVerdict is_minimal_cusco(const SetValuedMap& phi) {
  if (!is_usco(phi).ok) throw NotUsco("is_minimal_cusco requires an usco map");
  if (!convex_valued(phi)) return CuscoVerdict::No;
  auto regenerates = [&](const PiecewiseFn& sel) {
    return is_quasicontinuous(sel).ok && is_subcontinuous(sel) &&
           convexify(graph_closure(sel)) == phi;
  };
  if (regenerates(max_selection(phi))) return CuscoVerdict::Yes;
  // The max route is complete for genuine minimal cuscos; if the min selection
  // still regenerates, the two routes disagree and we refuse to decide.
  return regenerates(min_selection(phi)) ? CuscoVerdict::Undecided : CuscoVerdict::No;
}

std::vector<Rat> affine_roots_in(const std::vector<Affine>& fs, const Rat& lo, const Rat& hi) {
  std::set<Rat> roots;
  for (const auto& f : fs) {
    if (f.slope == 0) continue;
    Rat x = -f.intercept / f.slope;
    if (lo < x && x < hi) roots.insert(x);
  }
  return {roots.begin(), roots.end()};
}

VietorisPreimage vietoris_preimage(const SetValuedMap& phi,
                                   const std::vector<std::pair<Rat, Rat>>& basics) {
  if (basics.empty()) throw ValidationError("vietoris_preimage needs at least one basic");
  for (const auto& [lo, hi] : basics)
    if (!(lo < hi)) throw ValidationError("basic open interval with lo >= hi");

  // Merge the basics for the containment half (open intervals merge only on
  // strict overlap); the "meets" half quantifies over the originals.
  std::vector<std::pair<Rat, Rat>> merged = basics;
  std::sort(merged.begin(), merged.end());
  std::vector<std::pair<Rat, Rat>> cover;
  for (const auto& b : merged) {
    if (!cover.empty() && b.first < cover.back().second)
      cover.back().second = rat_max(cover.back().second, b.second);
    else
      cover.push_back(b);
  }

  auto holds_at_section = [&](const CompactSet& s) {
    for (const auto& iv : s.intervals()) {
      bool inside = false;
      for (const auto& c : cover)
        if (c.first < iv.lo && iv.hi < c.second) {
          inside = true;
          break;
        }
      if (!inside) return false;
    }
    for (const auto& b : basics) {
      bool meets = false;
      for (const auto& iv : s.intervals())
        if (iv.lo < b.second && iv.hi > b.first) {
          meets = true;
          break;
        }
      if (!meets) return false;
    }
    return true;
  };

  std::vector<DomainPiece> pieces;
  const auto& xs = phi.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (holds_at_section(phi.sections()[i])) pieces.push_back({xs[i], xs[i], false, false});

  std::set<Rat> consts;
  for (const auto& c : cover) {
    consts.insert(c.first);
    consts.insert(c.second);
  }
  for (const auto& b : basics) {
    consts.insert(b.first);
    consts.insert(b.second);
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    std::vector<Affine> diffs;
    for (const auto& band : phi.cells()[i])
      for (const auto& c : consts) {
        diffs.push_back({band.lower.slope, band.lower.intercept - c});
        diffs.push_back({band.upper.slope, band.upper.intercept - c});
      }
    std::vector<Rat> cuts = affine_roots_in(diffs, xs[i], xs[i + 1]);
    std::vector<Rat> grid = {xs[i]};
    grid.insert(grid.end(), cuts.begin(), cuts.end());
    grid.push_back(xs[i + 1]);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
      Rat mid = (grid[j] + grid[j + 1]) / 2;
      if (holds_at_section(phi.section_at(mid)))
        pieces.push_back({grid[j], grid[j + 1], true, true});
    }
    for (const auto& cut : cuts)
      if (holds_at_section(phi.section_at(cut))) pieces.push_back({cut, cut, false, false});
  }
  DomainSubset set{std::move(pieces)};
  bool open = set.is_open_in(phi.domain_lo(), phi.domain_hi());
  return {std::move(set), open};
}

namespace {

// Decides the hE relation between two band lists at a single x by evaluating
// their sections; used at sampled midpoints after sign-refinement.
bool h_at(const SetValuedMap& phi, const SetValuedMap& psi, const Rat& x, const Entourage& e) {
  return h_entourage_within(phi.section_at(x), psi.section_at(x), e);
}

std::vector<Rat> pair_refinement(const std::vector<Band>& a, const std::vector<Band>& b,
                                 const Rat& eps, const Rat& lo, const Rat& hi) {
  std::vector<Affine> bounds;
  for (const auto& band : a) {
    bounds.push_back(band.lower);
    bounds.push_back(band.upper);
  }
  for (const auto& band : b) {
    bounds.push_back(band.lower);
    bounds.push_back(band.upper);
  }
  std::vector<Affine> diffs;
  const Rat shifts[3] = {Rat(0), eps, 2 * eps};
  for (std::size_t i = 0; i < bounds.size(); ++i)
    for (std::size_t j = 0; j < bounds.size(); ++j)
      for (const auto& s : shifts) {
        diffs.push_back({bounds[i].slope - bounds[j].slope,
                         bounds[i].intercept - bounds[j].intercept - s});
        diffs.push_back({bounds[i].slope - bounds[j].slope,
                         bounds[i].intercept - bounds[j].intercept + s});
      }
  return affine_roots_in(diffs, lo, hi);
}

// Walks the common refinement of phi and psi restricted to [p,q], calling
// at_point on breakpoints/cut points and on one midpoint per sign-constant
// open subcell (where the hE decision cannot change). The interval endpoints
// themselves are visited even when they fall inside a cell.
template <typename F>
bool walk_interval(const SetValuedMap& phi, const SetValuedMap& psi, const Rat& p, const Rat& q,
                   const Rat& eps, F at_point) {
  SetValuedMap a = phi.refined(psi.breakpoints());
  SetValuedMap b = psi.refined(phi.breakpoints());
  const auto& xs = a.breakpoints();
  bool p_is_bp = false, q_is_bp = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == p) p_is_bp = true;
    if (xs[i] == q) q_is_bp = true;
    if (p <= xs[i] && xs[i] <= q)
      if (!at_point(xs[i], true)) return false;
  }
  if (!p_is_bp && !at_point(p, false)) return false;
  if (!q_is_bp && p != q && !at_point(q, false)) return false;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat lo = rat_max(xs[i], p), hi = rat_min(xs[i + 1], q);
    if (!(lo < hi)) continue;
    std::vector<Rat> cuts = pair_refinement(a.cells()[i], b.cells()[i], eps, lo, hi);
    std::vector<Rat> grid = {lo};
    grid.insert(grid.end(), cuts.begin(), cuts.end());
    grid.push_back(hi);
    for (const auto& cut : cuts)
      if (!at_point(cut, false)) return false;
    for (std::size_t j = 0; j + 1 < grid.size(); ++j)
      if (!at_point((grid[j] + grid[j + 1]) / 2, false)) return false;
  }
  return true;
}

}  // namespace

bool ball_membership(const SetValuedMap& phi, const SetValuedMap& psi, const CompactSet& a,
                     const Entourage& e) {
  if (phi.domain_lo() != psi.domain_lo() || phi.domain_hi() != psi.domain_hi())
    throw DomainMismatch("ball_membership: maps with different domains");
  if (a.min() < phi.domain_lo() || a.max() > phi.domain_hi())
    throw DomainMismatch("ball_membership: set outside the common domain");
  for (const auto& iv : a.intervals()) {
    bool ok = walk_interval(phi, psi, iv.lo, iv.hi, e.epsilon,
                            [&](const Rat& x, bool) { return h_at(phi, psi, x, e); });
    if (!ok) return false;
  }
  return true;
}

PropagationCheck dense_propagation_check(const SetValuedMap& phi, const SetValuedMap& psi,
                                         const Entourage& e) {
  if (!e.closed) throw ValidationError("dense_propagation_check needs the closed entourage");
  if (phi.domain_lo() != psi.domain_lo() || phi.domain_hi() != psi.domain_hi())
    throw DomainMismatch("dense_propagation_check: maps with different domains");
  bool hypothesis = walk_interval(phi, psi, phi.domain_lo(), phi.domain_hi(), e.epsilon,
                                  [&](const Rat& x, bool is_breakpoint) {
                                    if (is_breakpoint) return true;  // dense part only
                                    return h_at(phi, psi, x, e);
                                  });
  if (!hypothesis) return {true, false, std::nullopt};
  SetValuedMap a = phi.refined(psi.breakpoints());
  for (const auto& x : a.breakpoints())
    if (!h_at(phi, psi, x, e)) return {false, true, x};
  return {true, true, std::nullopt};
}

// --- patching ------------------------------------------------------------------

namespace {

// Closure, inside [dom_lo, dom_hi], of a union of open intervals.
std::vector<Interval> relative_closure(const std::vector<Interval>& open_intervals,
                                       const Rat& dom_lo, const Rat& dom_hi) {
  std::vector<Interval> closed;
  for (const auto& iv : open_intervals) {
    Rat lo = rat_max(iv.lo, dom_lo), hi = rat_min(iv.hi, dom_hi);
    if (lo < hi) closed.push_back({lo, hi});
  }
  if (closed.empty()) return {};
  std::sort(closed.begin(), closed.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : closed) {
    if (!merged.empty() && iv.lo <= merged.back().hi)
      merged.back().hi = rat_max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

bool in_closed_union(const std::vector<Interval>& ivs, const Rat& x) {
  for (const auto& iv : ivs)
    if (iv.lo <= x && x <= iv.hi) return true;
  return false;
}

}  // namespace

PiecewiseFn patch(const PiecewiseFn& f, const PiecewiseFn& g,
                  const std::vector<Interval>& u_open) {
  if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi())
    throw DomainMismatch("patch: functions with different domains");
  for (const auto& iv : u_open)
    if (!(iv.lo < iv.hi)) throw ValidationError("patch: open interval with lo >= hi");
  std::vector<Interval> cl_u = relative_closure(u_open, f.domain_lo(), f.domain_hi());
  std::vector<Rat> extra;
  for (const auto& iv : cl_u) {
    extra.push_back(iv.lo);
    extra.push_back(iv.hi);
  }
  PiecewiseFn fr = f.refined(extra).refined(g.breakpoints());
  PiecewiseFn gr = g.refined(extra).refined(f.breakpoints());
  const auto& xs = fr.breakpoints();
  std::vector<Rat> values;
  std::vector<Affine> cells;
  for (std::size_t i = 0; i < xs.size(); ++i)
    values.push_back(in_closed_union(cl_u, xs[i]) ? fr.values()[i] : gr.values()[i]);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    cells.push_back(in_closed_union(cl_u, mid) ? fr.cells()[i] : gr.cells()[i]);
  }
  return PiecewiseFn(xs, std::move(values), std::move(cells));
}

PiecewiseFn patch_const(const Rat& c, const PiecewiseFn& g, const std::vector<Interval>& u_open) {
  return patch(PiecewiseFn::constant(g.domain_lo(), g.domain_hi(), c), g, u_open);
}

namespace {

// Merges absolute open intervals; only strict overlap joins ((a,b),(b,c) keep
// the gap at b).
std::vector<Interval> merge_open(std::vector<Interval> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<Interval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.lo < merged.back().hi)
      merged.back().hi = rat_max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

// Closed complement of a union of open intervals within [dom_lo, dom_hi];
// may contain degenerate point pieces between touching opens.
std::vector<Interval> open_complement(const std::vector<Interval>& open_ivs, const Rat& dom_lo,
                                      const Rat& dom_hi) {
  std::vector<Interval> merged = merge_open(open_ivs);
  std::vector<Interval> out;
  Rat cursor = dom_lo;
  for (const auto& iv : merged) {
    if (iv.hi <= dom_lo || iv.lo >= dom_hi) continue;
    if (cursor <= iv.lo && iv.lo >= dom_lo) {
      if (cursor <= rat_min(iv.lo, dom_hi)) out.push_back({cursor, rat_min(iv.lo, dom_hi)});
    }
    cursor = rat_max(cursor, iv.hi);
  }
  if (cursor <= dom_hi) out.push_back({cursor, dom_hi});
  return out;
}

}  // namespace

CuscoAgreePatch cusco_agree_patch(const SetValuedMap& phi, const CompactSet& a,
                                  const std::vector<Interval>& u_open,
                                  const std::vector<Interval>& v_open, const Rat& y0) {
  const Rat& dlo = phi.domain_lo();
  const Rat& dhi = phi.domain_hi();
  if (a.min() < dlo || a.max() > dhi) throw DomainMismatch("cusco_agree_patch: a outside domain");

  // Containment in an absolute open interval; relative opens are expressed by
  // intervals overhanging the domain ends.
  auto strictly_contains = [](const std::vector<Interval>& open_ivs, const Rat& lo,
                              const Rat& hi) {
    for (const auto& iv : open_ivs)
      if (iv.lo < lo && hi < iv.hi) return true;
    return false;
  };
  std::vector<Interval> v_merged = merge_open(v_open);
  std::vector<Interval> u_merged = merge_open(u_open);
  for (const auto& iv : a.intervals())
    if (!strictly_contains(v_merged, iv.lo, iv.hi))
      throw ChainViolation("cusco_agree_patch: a not inside v");
  std::vector<Interval> cl_v = relative_closure(v_merged, dlo, dhi);
  for (const auto& iv : cl_v) {
    bool inside = false;
    for (const auto& u : u_merged) {
      bool left_ok = u.lo < iv.lo || (u.lo < dlo && iv.lo == dlo);
      bool right_ok = iv.hi < u.hi || (u.hi > dhi && iv.hi == dhi);
      if (left_ok && right_ok) {
        inside = true;
        break;
      }
    }
    if (!inside) throw ChainViolation("cusco_agree_patch: cl(v) not inside u");
  }

  // Complement of cl(v), overhanging the domain ends so that its closure is
  // taken relative to [dlo, dhi].
  std::vector<Interval> comp;
  Rat cursor = dlo - 1;
  for (const auto& iv : cl_v) {
    if (cursor < iv.lo) comp.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < dhi + 1) comp.push_back({cursor, dhi + 1});

  PiecewiseFn f = max_selection(phi);
  PiecewiseFn g = patch_const(y0, f, comp);
  SetValuedMap psi = convexify(graph_closure(g));

  if (!sections_equal_on(phi, psi, a))
    throw ValidationError("cusco_agree_patch: psi does not agree with phi on a");
  std::vector<Interval> off_u = open_complement(u_merged, dlo, dhi);
  for (const auto& gap : off_u) {
    // Off u the patched selection must be constantly y0; u is open so the
    // complement keeps its endpoints.
    PiecewiseFn gr = g.refined({gap.lo, gap.hi});
    const auto& xs = gr.breakpoints();
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (gap.lo <= xs[i] && xs[i] <= gap.hi && gr.values()[i] != y0)
        throw ValidationError("cusco_agree_patch: g differs from y0 off u");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      Rat mid = (xs[i] + xs[i + 1]) / 2;
      if (gap.lo <= mid && mid <= gap.hi && gr.eval(mid) != y0)
        throw ValidationError("cusco_agree_patch: g differs from y0 off u");
    }
  }
  return {std::move(psi), std::move(g)};
}

Rat bounded_on_compact(const SetValuedMap& phi) {
  if (!is_usco(phi).ok) throw NotUsco("bounded_on_compact requires an usco map");
  Rat bound(0);
  for (const auto& s : phi.sections())
    for (const auto& iv : s.intervals()) bound = rat_max(bound, rat_max(rat_abs(iv.lo), rat_abs(iv.hi)));
  const auto& xs = phi.breakpoints();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    for (const auto& b : phi.cells()[i])
      for (const Rat& x : {xs[i], xs[i + 1]}) {
        bound = rat_max(bound, rat_abs(b.lower.at(x)));
        bound = rat_max(bound, rat_abs(b.upper.at(x)));
      }
  return bound;
}

bool sections_equal_on(const SetValuedMap& phi, const SetValuedMap& psi, const CompactSet& a) {
  if (phi.domain_lo() != psi.domain_lo() || phi.domain_hi() != psi.domain_hi())
    throw DomainMismatch("sections_equal_on: maps with different domains");
  std::vector<Rat> cuts;
  for (const auto& iv : a.intervals()) {
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  SetValuedMap pa = phi.refined(psi.breakpoints()).refined(cuts);
  SetValuedMap pb = psi.refined(phi.breakpoints()).refined(cuts);
  const auto& xs = pa.breakpoints();
  for (const auto& iv : a.intervals()) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (iv.lo <= xs[i] && xs[i] <= iv.hi && !(pa.sections()[i] == pb.sections()[i])) return false;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      Rat lo = rat_max(xs[i], iv.lo), hi = rat_min(xs[i + 1], iv.hi);
      if (lo < hi && !(pa.cells()[i] == pb.cells()[i])) return false;
    }
  }
  return true;
}

std::vector<BandSample> sample_bands(const SetValuedMap& phi, int per_cell) {
  std::vector<BandSample> out;
  const auto& xs = phi.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (const auto& iv : phi.sections()[i].intervals()) out.push_back({xs[i], iv.lo, iv.hi});
    if (i + 1 < xs.size()) {
      for (int k = 1; k <= per_cell; ++k) {
        Rat x = xs[i] + (xs[i + 1] - xs[i]) * k / (per_cell + 1);
        for (const auto& b : phi.cells()[i]) out.push_back({x, b.lower.at(x), b.upper.at(x)});
      }
    }
  }
  return out;
}

}  // namespace wb
