#include "workbench/function_space.hpp"

#include "workbench/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wb {

FunctionGrid::FunctionGrid(const FiniteSpace& space, std::vector<Rat> values)
    : space_(&space), values_(std::move(values)) {
  if (space.proper_opens().size() + 2 != space.opens().size() ||
      space.opens().size() != (std::size_t(1) << space.point_count()))
    throw ValidationError("function grids require a discrete base space");
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  if (values_.empty()) throw ValidationError("grid value menu must be non-empty");
  auto zero = std::find(values_.begin(), values_.end(), Rat(0));
  if (zero == values_.end()) throw ValidationError("grid must contain the zero function");
  long long count = 1;
  for (int i = 0; i < space.point_count(); ++i) {
    count *= static_cast<long long>(values_.size());
    if (count > 1'000'000) throw ValidationError("grid too large");
  }
  member_count_ = static_cast<int>(count);
  int zi = static_cast<int>(zero - values_.begin());
  int id = 0, stride = 1;
  for (int i = 0; i < space.point_count(); ++i) {
    id += zi * stride;
    stride *= static_cast<int>(values_.size());
  }
  zero_member_ = id;
}

Rat FunctionGrid::value(int member, int point) const {
  int v = member;
  for (int i = 0; i < point; ++i) v /= static_cast<int>(values_.size());
  return values_[static_cast<std::size_t>(v % static_cast<int>(values_.size()))];
}

int FunctionGrid::member_of(const std::vector<Rat>& vals) const {
  if (static_cast<int>(vals.size()) != space_->point_count()) return -1;
  int id = 0, stride = 1;
  for (int p = 0; p < space_->point_count(); ++p) {
    auto it = std::find(values_.begin(), values_.end(), vals[static_cast<std::size_t>(p)]);
    if (it == values_.end()) return -1;
    id += static_cast<int>(it - values_.begin()) * stride;
    stride *= static_cast<int>(values_.size());
  }
  return id;
}

std::string FunctionGrid::member_label(int member) const {
  std::ostringstream os;
  os << "(";
  for (int p = 0; p < space_->point_count(); ++p) {
    if (p) os << ",";
    os << rat_str(value(member, p));
  }
  os << ")";
  return os.str();
}

bool member_in_ball(const FunctionGrid& grid, int center, int member, PointSet a, const Rat& eps) {
  for (int p = 0; p < grid.space().point_count(); ++p) {
    if (!(a >> p & 1)) continue;
    if (rat_abs(grid.value(member, p) - grid.value(center, p)) >= eps) return false;
  }
  return true;
}

std::vector<int> neighborhood_members(const FunctionGrid& grid, const FunctionNeighborhood& nbhd) {
  std::vector<int> out;
  for (int m = 0; m < grid.member_count(); ++m)
    if (member_in_ball(grid, nbhd.center, m, nbhd.a, nbhd.epsilon)) out.push_back(m);
  return out;
}

PointSet small_preimage_points(const FunctionGrid& grid, int member, unsigned n) {
  Rat eps = pow2_neg(n);
  PointSet w = 0;
  for (int p = 0; p < grid.space().point_count(); ++p)
    if (rat_abs(grid.value(member, p)) < eps) w |= PointSet(1) << p;
  return w;
}

bool cluster_at_zero(const FunctionGrid& grid, const std::vector<int>& members,
                     const std::vector<FunctionNeighborhood>& test_family) {
  for (const auto& nbhd : test_family) {
    if (nbhd.center != grid.zero_member())
      throw ValidationError("cluster_at_zero test family must be centered at the zero function");
    bool met = false;
    for (int m : members)
      if (member_in_ball(grid, nbhd.center, m, nbhd.a, nbhd.epsilon)) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

bool converges_to_zero(const FunctionGrid& grid, const std::vector<int>& members,
                       const std::vector<FunctionNeighborhood>& test_family, int tail_index) {
  for (const auto& nbhd : test_family) {
    if (nbhd.center != grid.zero_member())
      throw ValidationError("converges_to_zero test family must be centered at the zero function");
    for (std::size_t i = static_cast<std::size_t>(tail_index); i < members.size(); ++i)
      if (!member_in_ball(grid, nbhd.center, members[i], nbhd.a, nbhd.epsilon)) return false;
  }
  return true;
}

bool closed_discrete_surrogate(const FunctionGrid& grid, const std::vector<int>& members,
                               PointSet b) {
  if (members.empty()) return false;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (member_in_ball(grid, members[i], members[j], b, Rat(1))) return false;
  // A non-empty all-excluded suffix; equivalently the final pick is excluded.
  return !member_in_ball(grid, grid.zero_member(), members.back(), b, Rat(1));
}

bool is_dense_surrogate(const FunctionGrid& grid, const std::vector<int>& members,
                        const std::vector<PointSet>& ideal_members,
                        const std::vector<Rat>& eps_menu) {
  for (int psi = 0; psi < grid.member_count(); ++psi)
    for (PointSet a : ideal_members)
      for (const Rat& eps : eps_menu) {
        bool met = false;
        for (int m : members)
          if (member_in_ball(grid, psi, m, a, eps)) {
            met = true;
            break;
          }
        if (!met) return false;
      }
  return true;
}

DomainSubset small_preimage(const SetValuedMap& phi, unsigned n) {
  Rat eps = pow2_neg(n);
  return vietoris_preimage(phi, {{-eps, eps}}).set;
}

MapUniverse::MapUniverse(std::vector<std::string> names, std::vector<SetValuedMap> maps,
                         int zero_index)
    : names_(std::move(names)), maps_(std::move(maps)), zero_index_(zero_index) {
  if (names_.size() != maps_.size()) throw ValidationError("universe names/maps size mismatch");
  if (maps_.empty()) throw ValidationError("empty map universe");
  if (zero_index_ < 0 || zero_index_ >= size()) throw ValidationError("bad zero index");
  for (const auto& m : maps_)
    if (m.domain_lo() != maps_.front().domain_lo() || m.domain_hi() != maps_.front().domain_hi())
      throw ValidationError("universe maps must share a domain");
}

int MapUniverse::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

std::vector<int> MapUniverse::neighborhood_members(int center, const CompactSet& a,
                                                   const Rat& eps) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (ball_membership(map(center), map(i), a, Entourage{eps, false})) out.push_back(i);
  return out;
}

bool MapUniverse::cluster_at_zero(const std::vector<int>& members,
                                  const std::vector<std::pair<CompactSet, Rat>>& test_family) const {
  for (const auto& [a, eps] : test_family) {
    bool met = false;
    for (int m : members)
      if (ball_membership(map(zero_index_), map(m), a, Entourage{eps, false})) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

}  // namespace wb
