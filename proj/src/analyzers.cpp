#include "workbench/analyzers.hpp"

#include "workbench/errors.hpp"

#include <algorithm>

namespace wb {

IndicatorCuscoReport analyze_indicator_example() {
  PiecewiseFn f = PiecewiseFn::indicator(-1, 2, 0, 1);
  SetValuedMap phi = convexify(graph_closure(f));
  std::vector<std::pair<Rat, Rat>> basics = {{Rat(-1, 2), Rat(3, 4)}, {Rat(1, 4), Rat(3, 2)}};
  VietorisPreimage pre = vietoris_preimage(phi, basics);
  CuscoVerdict verdict = is_minimal_cusco(phi);
  // A continuous map has open Vietoris preimages; this one is a two-point set.
  bool continuous = pre.open;
  return {std::move(phi), verdict, std::move(pre), std::move(basics), continuous};
}

Rat SequenceFamily::a(int n) { return Rat(n, n + 1); }
Rat SequenceFamily::b(int n) { return Rat(n + 1, n + 2); }
Rat SequenceFamily::mid(int n) { return (a(n) + b(n)) / 2; }

Affine SequenceFamily::ramp(int n) {
  Rat slope = Rat(2) / (b(n) - a(n));
  return Affine{slope, -slope * a(n)};
}

PiecewiseFn SequenceFamily::truncated(int n_trunc) {
  if (n_trunc < 1) throw ValidationError("sequence truncation needs n_trunc >= 1");
  // Left end strictly inside the first ramp cell (a_0, mid_0), so the section
  // at every mid_n survives the truncation.
  Rat left = (a(0) + mid(0)) / 2;
  std::vector<Rat> xs = {left};
  std::vector<Rat> values = {ramp(0).at(left)};
  std::vector<Affine> cells;
  for (int n = 0; n <= n_trunc; ++n) {
    if (n > 0) {
      xs.push_back(a(n));
      values.push_back(2);
      cells.push_back(ramp(n));  // (a_n, mid_n)
    } else {
      cells.push_back(ramp(0));  // (left, mid_0)
    }
    xs.push_back(mid(n));
    values.push_back(2);
    cells.push_back(Affine{0, 2});  // plateau (mid_n, b_n), b_n = a_{n+1}
  }
  xs.push_back(b(n_trunc));
  values.push_back(2);
  return PiecewiseFn(std::move(xs), std::move(values), std::move(cells));
}

bool is_subcontinuous(const SequenceTail& tail) { return tail.plateau_growth == 0; }

CompactSet tail_cluster_set(const SequenceTail& tail) {
  if (!is_subcontinuous(tail))
    throw ValidationError("unbounded tail has no compact cluster set");
  // Ramps sweep [0,1] on every block; the plateau contributes its constant.
  return CompactSet::interval(0, 1).union_with(CompactSet::point(tail.plateau_base));
}

SetValuedMap augment_midpoints(const SetValuedMap& phi) {
  std::vector<CompactSet> sections;
  for (const auto& s : phi.sections())
    sections.push_back(s.union_with(CompactSet::point((s.min() + s.max()) / 2)));
  // Midpoints of single-band cell sections stay inside the band; multi-band
  // cells gain an explicit midpoint line.
  std::vector<std::vector<Band>> cells;
  for (const auto& bands : phi.cells()) {
    std::vector<Band> out = bands;
    if (bands.size() > 1) {
      Affine lo = bands.front().lower, hi = bands.back().upper;
      Affine mid{(lo.slope + hi.slope) / 2, (lo.intercept + hi.intercept) / 2};
      out.push_back(Band{mid, mid});
    }
    cells.push_back(out);
  }
  return SetValuedMap(phi.breakpoints(), std::move(sections), std::move(cells));
}

MidpointAugmentationReport analyze_midpoint_augmentation(int n_trunc) {
  PiecewiseFn f = SequenceFamily::truncated(n_trunc);
  SetValuedMap fbar = graph_closure(f);
  SetValuedMap g = augment_midpoints(fbar);

  bool sections_ok = true;
  CompactSet a_section({{0, 0}, {2, 2}});
  CompactSet mid_section({{1, 1}, {2, 2}});
  CompactSet g_a_section({{0, 0}, {1, 1}, {2, 2}});
  CompactSet g_mid_section({{1, 1}, {Rat(3, 2), Rat(3, 2)}, {2, 2}});
  for (int n = 1; n <= n_trunc && sections_ok; ++n)
    sections_ok = fbar.section_at(SequenceFamily::a(n)) == a_section &&
                  g.section_at(SequenceFamily::a(n)) == g_a_section;
  for (int n = 0; n <= n_trunc && sections_ok; ++n)
    sections_ok = fbar.section_at(SequenceFamily::mid(n)) == mid_section &&
                  g.section_at(SequenceFamily::mid(n)) == g_mid_section;

  // Cluster set of gr(f-bar) at the accumulation point 1: every tail block
  // contributes the closed ramp sweep plus the plateau value, and the
  // breakpoint sections already sit inside those.
  Affine ramp = SequenceFamily::ramp(n_trunc);
  Rat r_lo = ramp.at(SequenceFamily::a(n_trunc));
  Rat r_hi = ramp.at(SequenceFamily::mid(n_trunc));
  CompactSet cluster = CompactSet::interval(rat_min(r_lo, r_hi), rat_max(r_lo, r_hi))
                           .union_with(CompactSet::point(2))
                           .union_with(fbar.section_at(SequenceFamily::a(n_trunc)))
                           .union_with(fbar.section_at(SequenceFamily::mid(n_trunc)));

  bool fbar_min_usco = is_minimal_usco(fbar);

  // Extending f-bar to 1 with exactly the cluster set keeps the graph closed.
  CompactSet section_at_one = cluster;
  bool fbar_limit_usco = cluster.is_subset_of(section_at_one);

  // The augmented map keeps 3/2 in every G(mid_n) while its section at 1 only
  // gains the hull midpoint, which is already inside [0,1].
  Rat witness_y(3, 2);
  CompactSet g_limit = section_at_one.union_with(
      CompactSet::point((section_at_one.min() + section_at_one.max()) / 2));
  bool witness_escapes = !g_limit.contains(witness_y);
  bool witness_in_tail = true;
  for (int n = 0; n <= n_trunc; ++n)
    witness_in_tail = witness_in_tail && g.section_at(SequenceFamily::mid(n)).contains(witness_y);
  bool g_usco = !(witness_escapes && witness_in_tail);

  std::vector<Rat> witness_sequence;
  for (int n = std::max(0, n_trunc - 4); n <= n_trunc; ++n)
    witness_sequence.push_back(SequenceFamily::mid(n));

  return {n_trunc,
          sections_ok,
          std::move(a_section),
          std::move(mid_section),
          std::move(g_a_section),
          std::move(g_mid_section),
          std::move(cluster),
          fbar_min_usco,
          fbar_limit_usco,
          g_usco,
          std::move(witness_y),
          Rat(1),
          std::move(witness_sequence)};
}

}  // namespace wb
