#pragma once

#include "workbench/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wb {

// Closed rational interval, possibly degenerate.
struct Interval {
  Rat lo, hi;
  bool operator==(const Interval&) const = default;
};

// Element of K(R): a finite union of disjoint closed intervals, kept sorted and
// strictly separated (touching or overlapping inputs are merged on
// construction). Never empty.
class CompactSet {
 public:
  explicit CompactSet(std::vector<Interval> intervals);
  static CompactSet point(const Rat& x) { return CompactSet({{x, x}}); }
  static CompactSet interval(const Rat& lo, const Rat& hi) { return CompactSet({{lo, hi}}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  const Rat& min() const { return intervals_.front().lo; }
  const Rat& max() const { return intervals_.back().hi; }

  bool contains(const Rat& x) const;
  bool contains_interval(const Rat& lo, const Rat& hi) const;
  bool is_subset_of(const CompactSet& other) const;

  // Interval hull [min, max].
  CompactSet hull() const;

  CompactSet union_with(const CompactSet& other) const;

  bool operator==(const CompactSet&) const = default;
  std::string str() const;

 private:
  std::vector<Interval> intervals_;
};

// Entourage of R: the open diagonal strip Delta_eps, or its closed variant
// (from a closed convex neighborhood of 0).
struct Entourage {
  Rat epsilon;
  bool closed = false;
};

// Hausdorff-style lift hE: K <= E[L] and L <= E[K]. Fattenings are open for
// the Delta_eps entourage and closed for the closed variant.
bool h_entourage_within(const CompactSet& k, const CompactSet& l, const Entourage& e);

// sup over points of |distance| style helper: smallest closed epsilon at which
// the pair is hE-related, i.e. the exact Pompeiu-Hausdorff distance.
Rat hausdorff_distance(const CompactSet& k, const CompactSet& l);

}  // namespace wb
