#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wb {

// Point subsets of a finite space as bitmasks over 0-based points.
using PointSet = std::uint32_t;

inline int popcount(PointSet s) { return __builtin_popcount(s); }

// A finite point set with an explicit family of open sets. The family must
// contain the empty set and the whole space and be closed under pairwise
// union and intersection.
class FiniteSpace {
 public:
  FiniteSpace(int point_count, std::vector<PointSet> opens);

  static FiniteSpace discrete(int n);
  static FiniteSpace indiscrete(int n);
  static FiniteSpace sierpinski();  // points {0,1}, opens {}, {1}, {0,1}
  // Every labeled topology on n points, deterministic order.
  static std::vector<FiniteSpace> enumerate_all(int n);

  int point_count() const { return n_; }
  PointSet full() const { return full_; }
  const std::vector<PointSet>& opens() const { return opens_; }
  std::vector<PointSet> proper_opens() const;  // T_X: non-empty proper opens

  bool is_open(PointSet s) const;
  bool is_closed(PointSet s) const;
  PointSet closure(PointSet s) const;
  PointSet interior(PointSet s) const;

  std::string set_str(PointSet s) const;

 private:
  int n_;
  PointSet full_;
  std::vector<PointSet> opens_;
};

// Ideal of closed sets, relaxed for finite spaces: members are proper
// non-empty closed sets, unions of members stay in the family whenever they
// are still proper, closed subsets of members are members, and cl{x} is a
// member whenever it is proper.
class IdealFamily {
 public:
  IdealFamily(const FiniteSpace& space, std::vector<PointSet> members, bool validate = true);

  static std::vector<IdealFamily> enumerate_all(const FiniteSpace& space);

  const FiniteSpace& space() const { return *space_; }
  const std::vector<PointSet>& members() const { return members_; }
  bool contains(PointSet s) const;

 private:
  const FiniteSpace* space_;
  std::vector<PointSet> members_;
};

// --- predicates -----------------------------------------------------------

bool is_closed_discrete(const FiniteSpace& space, PointSet s);
bool clusters_at(const FiniteSpace& space, PointSet s, int x);
bool is_dense(const FiniteSpace& space, PointSet s);
// For every member A and open U >= A there is an open V with
// A <= V <= cl(V) <= U (exhaustive search).
bool is_a_normal(const FiniteSpace& space, const IdealFamily& ideal);

// Cover predicates over families of opens given as multisets (ordered lists).
// The throwing forms reject trivial families (containing {} or X); the _class
// forms are total and simply answer "not in the class".
bool is_a_cover(const FiniteSpace& space, const IdealFamily& ideal,
                const std::vector<PointSet>& family);
bool is_large_a_cover(const FiniteSpace& space, const IdealFamily& ideal,
                      const std::vector<PointSet>& family, int threshold = 2);

bool in_open_cover_class(const FiniteSpace& space, const std::vector<PointSet>& family);
// Set-theoretic covering only; the trivial members X and {} are allowed. This
// is the winning condition of the point-open game, where One's moves offer
// every open around a point.
bool in_plain_cover_class(const FiniteSpace& space, const std::vector<PointSet>& family);
// The _class predicates also come in a raw-members form so win conditions can
// capture the data without lifetime ties to an IdealFamily.
bool in_a_cover_class(const FiniteSpace& space, const std::vector<PointSet>& ideal_members,
                      const std::vector<PointSet>& family);
bool in_a_cover_class(const FiniteSpace& space, const IdealFamily& ideal,
                      const std::vector<PointSet>& family);
bool in_large_cover_class(const FiniteSpace& space, const std::vector<PointSet>& ideal_members,
                          const std::vector<PointSet>& family, int threshold);
bool in_large_cover_class(const FiniteSpace& space, const IdealFamily& ideal,
                          const std::vector<PointSet>& family, int threshold);
// Gamma surrogate: an A-cover whose elements from tail_index onward all
// contain every member.
bool in_gamma_cover_class(const FiniteSpace& space, const std::vector<PointSet>& ideal_members,
                          const std::vector<PointSet>& family, int tail_index);
bool in_gamma_cover_class(const FiniteSpace& space, const IdealFamily& ideal,
                          const std::vector<PointSet>& family, int tail_index);

// Point-sequence classes (items are points).
bool in_dense_class(const FiniteSpace& space, const std::vector<int>& picks);
bool in_closed_discrete_class(const FiniteSpace& space, const std::vector<int>& picks);
bool in_omega_at_class(const FiniteSpace& space, const std::vector<int>& picks, int x);
// Convergence surrogate: every pick from tail_index onward lies in every open
// neighborhood of x.
bool in_gamma_at_class(const FiniteSpace& space, const std::vector<int>& picks, int x,
                       int tail_index);

// Exact minimal size of a subfamily of A cofinal for B (brute force in
// increasing size). Families here are arbitrary set families; IdealFamily
// members qualify but validation is the caller's concern.
int cofinality(const std::vector<PointSet>& family_a, const std::vector<PointSet>& family_b);

// All non-trivial A-covers using distinct proper opens, each given as the
// sorted list of its elements; deterministic order.
std::vector<std::vector<PointSet>> all_a_covers(const FiniteSpace& space,
                                                const IdealFamily& ideal,
                                                std::size_t max_members);

}  // namespace wb
