#include "workbench/compact_set.hpp"

#include "workbench/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wb {

CompactSet::CompactSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw ValidationError("CompactSet must be non-empty");
  for (const auto& iv : intervals_)
    if (iv.hi < iv.lo) throw ValidationError("CompactSet interval with hi < lo");
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<Interval> merged;
  for (const auto& iv : intervals_) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(iv);
    }
  }
  intervals_ = std::move(merged);
}

bool CompactSet::contains(const Rat& x) const {
  for (const auto& iv : intervals_) {
    if (x < iv.lo) return false;
    if (x <= iv.hi) return true;
  }
  return false;
}

bool CompactSet::contains_interval(const Rat& lo, const Rat& hi) const {
  // A connected set sits inside a union of separated intervals iff one piece holds it.
  for (const auto& iv : intervals_)
    if (iv.lo <= lo && hi <= iv.hi) return true;
  return false;
}

bool CompactSet::is_subset_of(const CompactSet& other) const {
  for (const auto& iv : intervals_)
    if (!other.contains_interval(iv.lo, iv.hi)) return false;
  return true;
}

CompactSet CompactSet::hull() const { return CompactSet({{min(), max()}}); }

CompactSet CompactSet::union_with(const CompactSet& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return CompactSet(std::move(all));
}

std::string CompactSet::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& iv : intervals_) {
    if (!first) os << " u ";
    first = false;
    if (iv.lo == iv.hi)
      os << "{" << rat_str(iv.lo) << "}";
    else
      os << "[" << rat_str(iv.lo) << "," << rat_str(iv.hi) << "]";
  }
  return os.str();
}

namespace {

// One-sided inclusion k <= E[l]. The fattened pieces of l are merged first;
// open pieces merge only on strict overlap ((a,b) and (b,c) miss b).
bool within_fattening(const CompactSet& k, const CompactSet& l, const Rat& eps, bool closed) {
  struct Piece {
    Rat lo, hi;
  };
  std::vector<Piece> fat;
  for (const auto& iv : l.intervals()) fat.push_back({iv.lo - eps, iv.hi + eps});
  std::vector<Piece> merged;
  for (const auto& p : fat) {
    bool joins = !merged.empty() && (closed ? p.lo <= merged.back().hi : p.lo < merged.back().hi);
    if (joins) {
      if (p.hi > merged.back().hi) merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  for (const auto& iv : k.intervals()) {
    bool ok = false;
    for (const auto& p : merged) {
      bool inside = closed ? (p.lo <= iv.lo && iv.hi <= p.hi) : (p.lo < iv.lo && iv.hi < p.hi);
      if (inside) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool h_entourage_within(const CompactSet& k, const CompactSet& l, const Entourage& e) {
  if (e.epsilon <= 0) throw ValidationError("entourage epsilon must be positive");
  return within_fattening(k, l, e.epsilon, e.closed) && within_fattening(l, k, e.epsilon, e.closed);
}

namespace {

// sup_{x in k} dist(x, l), attained at an interval endpoint of k.
Rat directed_distance(const CompactSet& k, const CompactSet& l) {
  auto dist_point = [&](const Rat& x) {
    std::optional<Rat> best;
    for (const auto& iv : l.intervals()) {
      Rat d = x < iv.lo ? Rat(iv.lo - x) : (x > iv.hi ? Rat(x - iv.hi) : Rat(0));
      if (!best || d < *best) best = d;
    }
    return *best;
  };
  Rat worst(0);
  for (const auto& iv : k.intervals()) {
    // dist(., l) on [lo,hi] peaks at an endpoint or at a midpoint between
    // consecutive pieces of l; midpoints of l-gaps inside [lo,hi] matter too.
    worst = rat_max(worst, dist_point(iv.lo));
    worst = rat_max(worst, dist_point(iv.hi));
    const auto& ls = l.intervals();
    for (std::size_t j = 0; j + 1 < ls.size(); ++j) {
      Rat mid = (ls[j].hi + ls[j + 1].lo) / 2;
      if (iv.lo <= mid && mid <= iv.hi) worst = rat_max(worst, dist_point(mid));
    }
  }
  return worst;
}

}  // namespace

Rat hausdorff_distance(const CompactSet& k, const CompactSet& l) {
  return rat_max(directed_distance(k, l), directed_distance(l, k));
}

}  // namespace wb
