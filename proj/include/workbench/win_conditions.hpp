#pragma once

#include "workbench/finite_space.hpp"
#include "workbench/function_space.hpp"
#include "workbench/game.hpp"

#include <memory>
#include <set>

namespace wb {

// Win conditions close over value copies of everything they need, so a
// GameSpec stays self-contained and safe to evaluate from parallel workers.

// Items are open sets; item_opens maps item id -> point mask.
WinCondition win_open_cover(const FiniteSpace& space, std::vector<PointSet> item_opens);
WinCondition win_plain_cover(const FiniteSpace& space, std::vector<PointSet> item_opens);
WinCondition win_a_cover(const FiniteSpace& space, std::vector<PointSet> ideal_members,
                         std::vector<PointSet> item_opens);
WinCondition win_large_cover(const FiniteSpace& space, std::vector<PointSet> ideal_members,
                             std::vector<PointSet> item_opens, int threshold);
WinCondition win_gamma_cover(const FiniteSpace& space, std::vector<PointSet> ideal_members,
                             std::vector<PointSet> item_opens, int tail_index);

// Items are points.
WinCondition win_dense(const FiniteSpace& space);
WinCondition win_closed_discrete(const FiniteSpace& space);
WinCondition win_omega_at(const FiniteSpace& space, int x);
WinCondition win_gamma_at(const FiniteSpace& space, int x, int tail_index);

// Items are grid members. The grid and its base space are copied into a
// shared pack so the closure owns them.
struct GridPack {
  FiniteSpace space;
  FunctionGrid grid;
  GridPack(const FiniteSpace& s, const std::vector<Rat>& values) : space(s), grid(space, values) {}
};
using GridPackPtr = std::shared_ptr<const GridPack>;

GridPackPtr make_grid_pack(const FiniteSpace& space, std::vector<Rat> values);

WinCondition win_cluster_at_zero(GridPackPtr pack, std::vector<FunctionNeighborhood> test_family);
WinCondition win_converge_to_zero(GridPackPtr pack, std::vector<FunctionNeighborhood> test_family,
                                  int tail_index);
// Exists an ideal member b witnessing the closed-discrete separation.
WinCondition win_cd_surrogate(GridPackPtr pack, std::vector<PointSet> ideal_members);

// Abstract games: an explicit table of winning pick sequences.
WinCondition win_table(std::set<std::vector<Item>> winning);
WinCondition win_always(bool value);

}  // namespace wb
