#include "workbench/win_conditions.hpp"

namespace wb {

namespace {

std::vector<PointSet> resolve_opens(const std::vector<PointSet>& item_opens,
                                    std::span<const Item> picks) {
  std::vector<PointSet> family;
  family.reserve(picks.size());
  for (Item it : picks) family.push_back(item_opens[static_cast<std::size_t>(it)]);
  return family;
}

std::vector<int> resolve_ints(std::span<const Item> picks) {
  return std::vector<int>(picks.begin(), picks.end());
}

}  // namespace

WinCondition win_open_cover(const FiniteSpace& space, std::vector<PointSet> item_opens) {
  return {"open-cover", true,
          [space, item_opens = std::move(item_opens)](std::span<const Item> picks) {
            return in_open_cover_class(space, resolve_opens(item_opens, picks));
          }};
}

WinCondition win_plain_cover(const FiniteSpace& space, std::vector<PointSet> item_opens) {
  return {"plain-cover", true,
          [space, item_opens = std::move(item_opens)](std::span<const Item> picks) {
            return in_plain_cover_class(space, resolve_opens(item_opens, picks));
          }};
}

WinCondition win_a_cover(const FiniteSpace& space, std::vector<PointSet> ideal_members,
                         std::vector<PointSet> item_opens) {
  return {"a-cover", true,
          [space, ideal_members = std::move(ideal_members),
           item_opens = std::move(item_opens)](std::span<const Item> picks) {
            return in_a_cover_class(space, ideal_members, resolve_opens(item_opens, picks));
          }};
}

WinCondition win_large_cover(const FiniteSpace& space, std::vector<PointSet> ideal_members,
                             std::vector<PointSet> item_opens, int threshold) {
  return {"large-cover(k=" + std::to_string(threshold) + ")", true,
          [space, ideal_members = std::move(ideal_members), item_opens = std::move(item_opens),
           threshold](std::span<const Item> picks) {
            return in_large_cover_class(space, ideal_members, resolve_opens(item_opens, picks),
                                        threshold);
          }};
}

WinCondition win_gamma_cover(const FiniteSpace& space, std::vector<PointSet> ideal_members,
                             std::vector<PointSet> item_opens, int tail_index) {
  return {"gamma-cover(tail=" + std::to_string(tail_index) + ")", true,
          [space, ideal_members = std::move(ideal_members), item_opens = std::move(item_opens),
           tail_index](std::span<const Item> picks) {
            return in_gamma_cover_class(space, ideal_members, resolve_opens(item_opens, picks),
                                        tail_index);
          }};
}

WinCondition win_dense(const FiniteSpace& space) {
  return {"dense", true, [space](std::span<const Item> picks) {
            return in_dense_class(space, resolve_ints(picks));
          }};
}

WinCondition win_closed_discrete(const FiniteSpace& space) {
  return {"closed-discrete", true, [space](std::span<const Item> picks) {
            return in_closed_discrete_class(space, resolve_ints(picks));
          }};
}

WinCondition win_omega_at(const FiniteSpace& space, int x) {
  return {"omega-at(" + std::to_string(x) + ")", true, [space, x](std::span<const Item> picks) {
            return in_omega_at_class(space, resolve_ints(picks), x);
          }};
}

WinCondition win_gamma_at(const FiniteSpace& space, int x, int tail_index) {
  return {"gamma-at(" + std::to_string(x) + ",tail=" + std::to_string(tail_index) + ")", true,
          [space, x, tail_index](std::span<const Item> picks) {
            return in_gamma_at_class(space, resolve_ints(picks), x, tail_index);
          }};
}

GridPackPtr make_grid_pack(const FiniteSpace& space, std::vector<Rat> values) {
  return std::make_shared<const GridPack>(space, values);
}

WinCondition win_cluster_at_zero(GridPackPtr pack, std::vector<FunctionNeighborhood> test_family) {
  return {"omega-at-zero", true,
          [pack = std::move(pack), test_family = std::move(test_family)](std::span<const Item> picks) {
            return cluster_at_zero(pack->grid, resolve_ints(picks), test_family);
          }};
}

WinCondition win_converge_to_zero(GridPackPtr pack, std::vector<FunctionNeighborhood> test_family,
                                  int tail_index) {
  return {"gamma-at-zero(tail=" + std::to_string(tail_index) + ")", true,
          [pack = std::move(pack), test_family = std::move(test_family),
           tail_index](std::span<const Item> picks) {
            return converges_to_zero(pack->grid, resolve_ints(picks), test_family, tail_index);
          }};
}

WinCondition win_cd_surrogate(GridPackPtr pack, std::vector<PointSet> ideal_members) {
  return {"cd-surrogate", true,
          [pack = std::move(pack), ideal_members = std::move(ideal_members)](
              std::span<const Item> picks) {
            for (PointSet b : ideal_members)
              if (closed_discrete_surrogate(pack->grid, resolve_ints(picks), b)) return true;
            return false;
          }};
}

WinCondition win_table(std::set<std::vector<Item>> winning) {
  return {"table", false, [winning = std::move(winning)](std::span<const Item> picks) {
            return winning.count(std::vector<Item>(picks.begin(), picks.end())) > 0;
          }};
}

WinCondition win_always(bool value) {
  return {value ? "always" : "never", false, [value](std::span<const Item>) { return value; }};
}

}  // namespace wb
