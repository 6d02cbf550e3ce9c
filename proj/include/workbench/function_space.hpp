#pragma once

#include "workbench/compact_set.hpp"
#include "workbench/finite_space.hpp"
#include "workbench/piecewise.hpp"
#include "workbench/rational.hpp"

#include <string>
#include <vector>

namespace wb {

// Finite model of MC_A(X) over a finite discrete space: every function
// X -> value menu is a member (minimal cusco maps on a discrete space are
// single-valued). Member ids enumerate the full value lattice, point 0 in the
// least significant digit; the constant-0 function must be on the grid.
class FunctionGrid {
 public:
  FunctionGrid(const FiniteSpace& space, std::vector<Rat> values);

  const FiniteSpace& space() const { return *space_; }
  const std::vector<Rat>& values() const { return values_; }
  int member_count() const { return member_count_; }
  Rat value(int member, int point) const;
  int zero_member() const { return zero_member_; }
  int member_of(const std::vector<Rat>& vals) const;  // -1 when off the grid
  std::string member_label(int member) const;

 private:
  const FiniteSpace* space_;
  std::vector<Rat> values_;
  int member_count_ = 0;
  int zero_member_ = 0;
};

struct FunctionNeighborhood {
  int center;
  PointSet a;
  Rat epsilon;
};

// sup_{x in a} |member(x) - center(x)| < eps (grid members are single-valued,
// so the h-entourage collapses to a sup distance).
bool member_in_ball(const FunctionGrid& grid, int center, int member, PointSet a, const Rat& eps);

// Ascending member ids inside the neighborhood.
std::vector<int> neighborhood_members(const FunctionGrid& grid, const FunctionNeighborhood& nbhd);

// W_{member,n}: the points where |member| < 2^-n.
PointSet small_preimage_points(const FunctionGrid& grid, int member, unsigned n);

// Every test neighborhood (centered at 0) contains some member of the multiset.
bool cluster_at_zero(const FunctionGrid& grid, const std::vector<int>& members,
                     const std::vector<FunctionNeighborhood>& test_family);

// Convergence surrogate: every member from tail_index onward lies in every
// test neighborhood.
bool converges_to_zero(const FunctionGrid& grid, const std::vector<int>& members,
                       const std::vector<FunctionNeighborhood>& test_family, int tail_index);

// Desk-scale closed-discreteness: members pairwise at distance >= 1 somewhere
// on b, and a non-empty suffix excluded from [0; b, 1].
bool closed_discrete_surrogate(const FunctionGrid& grid, const std::vector<int>& members,
                               PointSet b);

// Dense surrogate: meets [psi; a, eps] for every grid member psi, every ideal
// member a and every menu epsilon.
bool is_dense_surrogate(const FunctionGrid& grid, const std::vector<int>& members,
                        const std::vector<PointSet>& ideal_members,
                        const std::vector<Rat>& eps_menu);

// W_{phi,n} over an interval domain: {x : phi(x) <= (-2^-n, 2^-n)}.
DomainSubset small_preimage(const SetValuedMap& phi, unsigned n);

// Registered finite universe of piecewise maps on a shared interval domain.
class MapUniverse {
 public:
  MapUniverse(std::vector<std::string> names, std::vector<SetValuedMap> maps, int zero_index);

  int size() const { return static_cast<int>(maps_.size()); }
  const SetValuedMap& map(int i) const { return maps_[static_cast<std::size_t>(i)]; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  int zero_index() const { return zero_index_; }
  int index_of(const std::string& name) const;  // -1 when absent

  // Members within [center; a, eps].
  std::vector<int> neighborhood_members(int center, const CompactSet& a, const Rat& eps) const;
  bool cluster_at_zero(const std::vector<int>& members,
                       const std::vector<std::pair<CompactSet, Rat>>& test_family) const;

 private:
  std::vector<std::string> names_;
  std::vector<SetValuedMap> maps_;
  int zero_index_;
};

}  // namespace wb
