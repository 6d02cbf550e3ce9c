#include "workbench/finite_space.hpp"

#include "workbench/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wb {

FiniteSpace::FiniteSpace(int point_count, std::vector<PointSet> opens)
    : n_(point_count), full_(0), opens_(std::move(opens)) {
  if (n_ < 1 || n_ > 16) throw ValidationError("point count must be in [1,16]");
  full_ = (PointSet(1) << n_) - 1;
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  for (PointSet u : opens_)
    if (u & ~full_) throw ValidationError("open set mentions a point outside the space");
  if (!is_open(0) || !is_open(full_)) throw ValidationError("opens must contain {} and X");
  for (PointSet u : opens_)
    for (PointSet v : opens_) {
      if (!is_open(u | v)) throw ValidationError("opens not closed under union");
      if (!is_open(u & v)) throw ValidationError("opens not closed under intersection");
    }
}

FiniteSpace FiniteSpace::discrete(int n) {
  std::vector<PointSet> opens;
  for (PointSet s = 0; s < (PointSet(1) << n); ++s) opens.push_back(s);
  return FiniteSpace(n, std::move(opens));
}

FiniteSpace FiniteSpace::indiscrete(int n) {
  return FiniteSpace(n, {0, (PointSet(1) << n) - 1});
}

FiniteSpace FiniteSpace::sierpinski() { return FiniteSpace(2, {0b00, 0b10, 0b11}); }

std::vector<FiniteSpace> FiniteSpace::enumerate_all(int n) {
  if (n > 4) throw ValidationError("topology enumeration limited to 4 points");
  PointSet full = (PointSet(1) << n) - 1;
  std::vector<PointSet> propers;
  for (PointSet s = 1; s < full; ++s) propers.push_back(s);
  std::vector<FiniteSpace> out;
  for (std::uint64_t pick = 0; pick < (std::uint64_t(1) << propers.size()); ++pick) {
    std::vector<PointSet> opens = {0, full};
    for (std::size_t i = 0; i < propers.size(); ++i)
      if (pick >> i & 1) opens.push_back(propers[i]);
    bool ok = true;
    for (PointSet u : opens) {
      for (PointSet v : opens) {
        if (std::find(opens.begin(), opens.end(), u | v) == opens.end() ||
            std::find(opens.begin(), opens.end(), u & v) == opens.end()) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) out.emplace_back(n, opens);
  }
  return out;
}

std::vector<PointSet> FiniteSpace::proper_opens() const {
  std::vector<PointSet> out;
  for (PointSet u : opens_)
    if (u != 0 && u != full_) out.push_back(u);
  return out;
}

bool FiniteSpace::is_open(PointSet s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

bool FiniteSpace::is_closed(PointSet s) const { return is_open(full_ & ~s); }

PointSet FiniteSpace::closure(PointSet s) const {
  PointSet result = full_;
  for (PointSet u : opens_) {
    PointSet closed = full_ & ~u;
    if ((s & ~closed) == 0) result &= closed;
  }
  return result;
}

PointSet FiniteSpace::interior(PointSet s) const { return full_ & ~closure(full_ & ~s); }

std::string FiniteSpace::set_str(PointSet s) const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 0; i < n_; ++i)
    if (s >> i & 1) {
      if (!first) os << ",";
      first = false;
      os << i;
    }
  os << "}";
  return os.str();
}

IdealFamily::IdealFamily(const FiniteSpace& space, std::vector<PointSet> members, bool validate)
    : space_(&space), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!validate) return;
  for (PointSet m : members_) {
    if (m == 0) throw ValidationError("ideal member must be non-empty");
    if (m == space.full()) throw ValidationError("ideal member must be proper");
    if (!space.is_closed(m)) throw ValidationError("ideal member must be closed");
  }
  for (PointSet a : members_)
    for (PointSet b : members_) {
      PointSet u = a | b;
      if (u != space.full() && !contains(u))
        throw ValidationError("ideal not closed under proper unions");
    }
  for (PointSet a : members_)
    for (PointSet s = 1; s < a; ++s)
      if ((s & ~a) == 0 && space.is_closed(s) && !contains(s))
        throw ValidationError("ideal not closed under closed subsets");
  for (int x = 0; x < space.point_count(); ++x) {
    PointSet c = space.closure(PointSet(1) << x);
    if (c != space.full() && !contains(c))
      throw ValidationError("ideal missing a point closure");
  }
}

bool IdealFamily::contains(PointSet s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

std::vector<IdealFamily> IdealFamily::enumerate_all(const FiniteSpace& space) {
  std::vector<PointSet> candidates;
  for (PointSet s = 1; s < space.full(); ++s)
    if (space.is_closed(s)) candidates.push_back(s);
  std::vector<IdealFamily> out;
  for (std::uint64_t pick = 0; pick < (std::uint64_t(1) << candidates.size()); ++pick) {
    std::vector<PointSet> members;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (pick >> i & 1) members.push_back(candidates[i]);
    try {
      out.emplace_back(space, members);
    } catch (const ValidationError&) {
    }
  }
  return out;
}

bool is_closed_discrete(const FiniteSpace& space, PointSet s) {
  if (!space.is_closed(s)) return false;
  for (int x = 0; x < space.point_count(); ++x) {
    if (!(s >> x & 1)) continue;
    bool isolated = false;
    for (PointSet u : space.opens())
      if ((u >> x & 1) && (u & s) == (PointSet(1) << x)) {
        isolated = true;
        break;
      }
    if (!isolated) return false;
  }
  return true;
}

bool clusters_at(const FiniteSpace& space, PointSet s, int x) {
  return space.closure(s) >> x & 1;
}

bool is_dense(const FiniteSpace& space, PointSet s) { return space.closure(s) == space.full(); }

bool is_a_normal(const FiniteSpace& space, const IdealFamily& ideal) {
  for (PointSet a : ideal.members())
    for (PointSet u : space.opens()) {
      if (a & ~u) continue;
      bool found = false;
      for (PointSet v : space.opens())
        if ((a & ~v) == 0 && (space.closure(v) & ~u) == 0) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

namespace {

void reject_trivial(const FiniteSpace& space, const std::vector<PointSet>& family) {
  for (PointSet u : family) {
    if (u == 0) throw TrivialCover("cover family contains the empty set");
    if (u == space.full()) throw TrivialCover("cover family contains the whole space");
  }
}

bool nontrivial_cover(const FiniteSpace& space, const std::vector<PointSet>& family) {
  PointSet seen = 0;
  for (PointSet u : family) {
    if (u == 0 || u == space.full()) return false;
    seen |= u;
  }
  return seen == space.full();
}

}  // namespace

bool in_open_cover_class(const FiniteSpace& space, const std::vector<PointSet>& family) {
  return nontrivial_cover(space, family);
}

bool in_plain_cover_class(const FiniteSpace& space, const std::vector<PointSet>& family) {
  PointSet seen = 0;
  for (PointSet u : family) seen |= u;
  return seen == space.full();
}

bool in_a_cover_class(const FiniteSpace& space, const std::vector<PointSet>& ideal_members,
                      const std::vector<PointSet>& family) {
  if (!nontrivial_cover(space, family)) return false;
  for (PointSet a : ideal_members) {
    bool held = false;
    for (PointSet u : family)
      if ((a & ~u) == 0) {
        held = true;
        break;
      }
    if (!held) return false;
  }
  return true;
}

bool in_a_cover_class(const FiniteSpace& space, const IdealFamily& ideal,
                      const std::vector<PointSet>& family) {
  return in_a_cover_class(space, ideal.members(), family);
}

bool in_large_cover_class(const FiniteSpace& space, const std::vector<PointSet>& ideal_members,
                          const std::vector<PointSet>& family, int threshold) {
  if (!nontrivial_cover(space, family)) return false;
  for (PointSet a : ideal_members) {
    int count = 0;
    for (PointSet u : family)
      if ((a & ~u) == 0) ++count;
    if (count < threshold) return false;
  }
  return true;
}

bool in_large_cover_class(const FiniteSpace& space, const IdealFamily& ideal,
                          const std::vector<PointSet>& family, int threshold) {
  return in_large_cover_class(space, ideal.members(), family, threshold);
}

bool in_gamma_cover_class(const FiniteSpace& space, const std::vector<PointSet>& ideal_members,
                          const std::vector<PointSet>& family, int tail_index) {
  if (!in_a_cover_class(space, ideal_members, family)) return false;
  for (PointSet a : ideal_members)
    for (std::size_t i = static_cast<std::size_t>(tail_index); i < family.size(); ++i)
      if (a & ~family[i]) return false;
  return true;
}

bool in_gamma_cover_class(const FiniteSpace& space, const IdealFamily& ideal,
                          const std::vector<PointSet>& family, int tail_index) {
  return in_gamma_cover_class(space, ideal.members(), family, tail_index);
}

bool is_a_cover(const FiniteSpace& space, const IdealFamily& ideal,
                const std::vector<PointSet>& family) {
  reject_trivial(space, family);
  return in_a_cover_class(space, ideal, family);
}

bool is_large_a_cover(const FiniteSpace& space, const IdealFamily& ideal,
                      const std::vector<PointSet>& family, int threshold) {
  reject_trivial(space, family);
  return in_large_cover_class(space, ideal, family, threshold);
}

namespace {

PointSet picks_to_set(const std::vector<int>& picks) {
  PointSet s = 0;
  for (int p : picks) s |= PointSet(1) << p;
  return s;
}

}  // namespace

bool in_dense_class(const FiniteSpace& space, const std::vector<int>& picks) {
  return is_dense(space, picks_to_set(picks));
}

bool in_closed_discrete_class(const FiniteSpace& space, const std::vector<int>& picks) {
  return is_closed_discrete(space, picks_to_set(picks));
}

bool in_omega_at_class(const FiniteSpace& space, const std::vector<int>& picks, int x) {
  return clusters_at(space, picks_to_set(picks), x);
}

bool in_gamma_at_class(const FiniteSpace& space, const std::vector<int>& picks, int x,
                       int tail_index) {
  for (PointSet u : space.opens()) {
    if (!(u >> x & 1)) continue;
    for (std::size_t i = static_cast<std::size_t>(tail_index); i < picks.size(); ++i)
      if (!(u >> picks[i] & 1)) return false;
  }
  return true;
}

int cofinality(const std::vector<PointSet>& family_a, const std::vector<PointSet>& family_b) {
  for (PointSet b : family_b) {
    bool dominated = false;
    for (PointSet a : family_a)
      if ((b & ~a) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) throw NotCofinal("family A is not cofinal for family B");
  }
  if (family_b.empty()) return 0;
  if (family_a.size() > 20) throw ValidationError("cofinality search limited to 20 members");
  std::uint32_t n = static_cast<std::uint32_t>(family_a.size());
  for (int size = 0; size <= static_cast<int>(n); ++size) {
    for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
      if (popcount(sub) != size) continue;
      bool covers = true;
      for (PointSet b : family_b) {
        bool dominated = false;
        for (std::uint32_t i = 0; i < n && !dominated; ++i)
          if ((sub >> i & 1) && (b & ~family_a[i]) == 0) dominated = true;
        if (!dominated) {
          covers = false;
          break;
        }
      }
      if (covers) return size;
    }
  }
  return static_cast<int>(n);  // unreachable given the precondition
}

std::vector<std::vector<PointSet>> all_a_covers(const FiniteSpace& space,
                                                const IdealFamily& ideal,
                                                std::size_t max_members) {
  std::vector<PointSet> opens = space.proper_opens();
  std::vector<std::vector<PointSet>> out;
  if (opens.size() > 20) throw ValidationError("cover enumeration limited to 20 opens");
  for (std::uint32_t pick = 1; pick < (1u << opens.size()); ++pick) {
    if (static_cast<std::size_t>(popcount(pick)) > max_members) continue;
    std::vector<PointSet> family;
    for (std::size_t i = 0; i < opens.size(); ++i)
      if (pick >> i & 1) family.push_back(opens[i]);
    if (in_a_cover_class(space, ideal, family)) out.push_back(std::move(family));
  }
  return out;
}

}  // namespace wb
