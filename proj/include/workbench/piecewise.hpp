#pragma once

#include "workbench/compact_set.hpp"
#include "workbench/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wb {

struct Affine {
  Rat slope, intercept;
  Rat at(const Rat& x) const { return slope * x + intercept; }
  bool operator==(const Affine&) const = default;
};

// Vertical strip of graph on an open cell: lower(x) <= upper(x) throughout.
struct Band {
  Affine lower, upper;
  bool operator==(const Band&) const = default;
};

// Subset of a closed interval domain: finite union of intervals (with open or
// closed ends) and isolated points, kept sorted, disjoint and merged.
struct DomainPiece {
  Rat lo, hi;
  bool lo_open = false, hi_open = false;
  bool is_point() const { return lo == hi; }
};

class DomainSubset {
 public:
  DomainSubset() = default;
  explicit DomainSubset(std::vector<DomainPiece> pieces);

  bool empty() const { return pieces_.empty(); }
  const std::vector<DomainPiece>& pieces() const { return pieces_; }
  bool contains(const Rat& x) const;
  // Open in the subspace topology of [dom_lo, dom_hi].
  bool is_open_in(const Rat& dom_lo, const Rat& dom_hi) const;
  std::string str() const;
  bool operator==(const DomainSubset&) const = default;

 private:
  std::vector<DomainPiece> pieces_;
};

// Total piecewise-affine function on [a,b]: affine formulas on the open cells
// between breakpoints plus an explicit value at every breakpoint.
class PiecewiseFn {
 public:
  PiecewiseFn(std::vector<Rat> breakpoints, std::vector<Rat> values, std::vector<Affine> cells);
  static PiecewiseFn constant(const Rat& lo, const Rat& hi, const Rat& c);
  // Indicator of [set_lo, set_hi] inside [dom_lo, dom_hi].
  static PiecewiseFn indicator(const Rat& dom_lo, const Rat& dom_hi, const Rat& set_lo,
                               const Rat& set_hi);

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return values_; }
  const std::vector<Affine>& cells() const { return cells_; }
  const Rat& domain_lo() const { return xs_.front(); }
  const Rat& domain_hi() const { return xs_.back(); }

  Rat eval(const Rat& x) const;
  // One-sided limits at breakpoint index i (affine pieces, so just formula values).
  Rat left_limit(std::size_t i) const;
  Rat right_limit(std::size_t i) const;

  PiecewiseFn refined(const std::vector<Rat>& extra_points) const;
  bool operator==(const PiecewiseFn&) const;

 private:
  std::vector<Rat> xs_;
  std::vector<Rat> values_;
  std::vector<Affine> cells_;
};

// Piecewise-affine set-valued map [a,b] -> K(R): a CompactSet at every
// breakpoint and a canonical list of non-crossing bands on every open cell.
class SetValuedMap {
 public:
  SetValuedMap(std::vector<Rat> breakpoints, std::vector<CompactSet> sections,
               std::vector<std::vector<Band>> cells);
  static SetValuedMap constant(const Rat& lo, const Rat& hi, const CompactSet& value);

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<CompactSet>& sections() const { return sections_; }
  const std::vector<std::vector<Band>>& cells() const { return cells_; }
  const Rat& domain_lo() const { return xs_.front(); }
  const Rat& domain_hi() const { return xs_.back(); }

  CompactSet section_at(const Rat& x) const;
  SetValuedMap refined(const std::vector<Rat>& extra_points) const;
  // Graph equality via common refinement.
  bool operator==(const SetValuedMap&) const;

 private:
  std::vector<Rat> xs_;
  std::vector<CompactSet> sections_;
  std::vector<std::vector<Band>> cells_;
};

// --- constructions ---------------------------------------------------------

// f-bar: vertical sections of the closure of gr(f).
SetValuedMap graph_closure(const PiecewiseFn& f);
// f-check sections: pointwise interval hull.
SetValuedMap convexify(const SetValuedMap& phi);

PiecewiseFn min_selection(const SetValuedMap& phi);
PiecewiseFn max_selection(const SetValuedMap& phi);

// --- decision procedures ---------------------------------------------------

struct UscoCheck {
  bool ok = true;
  // Offending graph-limit point (x, y) not in the section at x.
  std::optional<std::pair<Rat, Rat>> witness;
};
UscoCheck is_usco(const SetValuedMap& phi);

struct QuasiCheck {
  bool ok = true;
  std::optional<Rat> witness;
};
// Piecewise-affine criterion: the breakpoint value coincides with a one-sided limit.
QuasiCheck is_quasicontinuous(const PiecewiseFn& f);

// Affine pieces on bounded cells always have finite one-sided limits.
bool is_subcontinuous(const PiecewiseFn& f);

// Minimal usco via the selection characterization: a map is minimal usco
// exactly when the minimum selection is quasicontinuous, subcontinuous and
// regenerates the map by graph closure (minimality makes every selection
// work, so the one selection decides both directions).
bool is_minimal_usco(const SetValuedMap& phi);

enum class CuscoVerdict { No, Yes, Undecided };
// Max-selection test, cross-checked against the min selection; a disagreement
// between the two routes is reported as Undecided rather than resolved.
CuscoVerdict is_minimal_cusco(const SetValuedMap& phi);

bool convex_valued(const SetValuedMap& phi);

struct VietorisPreimage {
  DomainSubset set;
  bool open = false;
};
// {x : phi(x) <= union(basics) and phi(x) meets every basic}; basics are open
// rational intervals. Openness is relative to the domain.
VietorisPreimage vietoris_preimage(const SetValuedMap& phi,
                                   const std::vector<std::pair<Rat, Rat>>& basics);

// [phi; a, e] membership of psi: h-entourage relation holds at every x in a.
bool ball_membership(const SetValuedMap& phi, const SetValuedMap& psi, const CompactSet& a,
                     const Entourage& e);

struct PropagationCheck {
  bool ok = true;
  bool hypothesis_held = false;
  std::optional<Rat> witness;
};
// If the closed-hE relation holds at every non-breakpoint x (a dense set),
// it must hold at the breakpoints too; reports the offending breakpoint.
PropagationCheck dense_propagation_check(const SetValuedMap& phi, const SetValuedMap& psi,
                                         const Entourage& e);

// h = f on cl(u), g elsewhere. u is a union of open intervals (clipped to the
// common domain; intervals may overhang the ends to express relative opens).
PiecewiseFn patch(const PiecewiseFn& f, const PiecewiseFn& g, const std::vector<Interval>& u_open);
PiecewiseFn patch_const(const Rat& c, const PiecewiseFn& g, const std::vector<Interval>& u_open);

struct CuscoAgreePatch {
  SetValuedMap psi;
  PiecewiseFn g;
};
// Constant-outside patching: g = y0 on cl(X \ cl(v)), the max selection of
// phi otherwise; psi = convexify(graph_closure(g)). Verifies the chain
// a <= v <= cl(v) <= u and the agreement/off-u postconditions.
CuscoAgreePatch cusco_agree_patch(const SetValuedMap& phi, const CompactSet& a,
                                  const std::vector<Interval>& u_open,
                                  const std::vector<Interval>& v_open, const Rat& y0);

// Exact sup of |values| over the compact domain; requires is_usco.
Rat bounded_on_compact(const SetValuedMap& phi);

// Sectionwise equality restricted to the compact subset a.
bool sections_equal_on(const SetValuedMap& phi, const SetValuedMap& psi, const CompactSet& a);

// Interior points of (lo,hi) where some listed affine function vanishes.
std::vector<Rat> affine_roots_in(const std::vector<Affine>& fs, const Rat& lo, const Rat& hi);

struct BandSample {
  Rat x, lo, hi;
};
// Graph samples for plotting: every breakpoint section interval plus sampled
// band values inside each cell.
std::vector<BandSample> sample_bands(const SetValuedMap& phi, int per_cell);

}  // namespace wb
