#pragma once

#include "workbench/piecewise.hpp"

#include <vector>

namespace wb {

// The indicator-based minimal cusco map on [-1, 2] and its continuity failure
// witnessed through a Vietoris basic.
struct IndicatorCuscoReport {
  SetValuedMap phi;
  CuscoVerdict minimal_cusco;
  VietorisPreimage preimage;
  std::vector<std::pair<Rat, Rat>> basics;
  bool continuous;
};
IndicatorCuscoReport analyze_indicator_example();

// The ramp/plateau sequence accumulating at 1: a_n = n/(n+1), b_n = (n+1)/(n+2),
// mid_n = (a_n + b_n)/2, with a linear ramp from 0 to 1 on (a_n, mid_n) and a
// plateau at 2 on [mid_n, b_n].
struct SequenceFamily {
  static Rat a(int n);
  static Rat b(int n);
  static Rat mid(int n);
  static Affine ramp(int n);
  // Truncation at N on the closed domain [mid(0)/2 shifted inside, b(N)]:
  // the left end sits inside the first ramp so every mid_n section survives.
  static PiecewiseFn truncated(int n_trunc);
};

// Densely defined selection data on the tail blocks of the sequence family:
// block n carries the ramp sweep plus a plateau at base + growth * n. With
// nonzero growth the values blow up toward the accumulation point.
struct SequenceTail {
  Rat plateau_base{2};
  Rat plateau_growth{0};
};
// Fuller-style subcontinuity at the accumulation point: every tail sequence
// needs a finite accumulation value, i.e. the closed form must stay bounded.
bool is_subcontinuous(const SequenceTail& tail);
// Cluster set of the tail values at the accumulation point (bounded tails).
CompactSet tail_cluster_set(const SequenceTail& tail);

struct MidpointAugmentationReport {
  int n_trunc;
  bool sections_ok;                      // closed-form sections reproduced for all n
  CompactSet f_bar_a_section;            // section at every a_n (n >= 1)
  CompactSet f_bar_mid_section;          // section at every mid_n
  CompactSet g_a_section;
  CompactSet g_mid_section;
  CompactSet limit_section;              // section forced at the accumulation point
  bool f_bar_truncation_minimal_usco;
  bool f_bar_with_limit_usco;            // closure alone stays usco at 1
  bool g_usco;                           // midpoint augmentation breaks it
  Rat witness_y;
  Rat witness_x_limit;
  std::vector<Rat> witness_sequence;     // mid_n marching into the witness
};
MidpointAugmentationReport analyze_midpoint_augmentation(int n_trunc);

// Midpoint augmentation of an arbitrary map (adds (min+max)/2 to every section).
SetValuedMap augment_midpoints(const SetValuedMap& phi);

}  // namespace wb
