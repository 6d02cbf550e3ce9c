#pragma once

#include "workbench/translation.hpp"
#include "workbench/win_conditions.hpp"

#include <optional>

namespace wb {

enum class BuiltinTranslation {
  Identity,
  CoversToFanTightness,        // covers game into strong fan-tightness at 0
  DenseToCovers,               // dense-selection game into the covers game
  NeighborhoodsToClosedDiscrete,  // neighborhood game into closed-discrete selection
  WGameTransfer,               // W-game at 0 into the neighborhood/convergence game
};

std::optional<BuiltinTranslation> builtin_translation_from_name(const std::string& name);
std::string builtin_translation_name(BuiltinTranslation which);

// The standard registered desk instantiation: X = discrete {0,1},
// A = B = the singleton ideal, grid = {-1,0,1}^X, epsilon menu {1}.
struct DeskRegistry {
  FiniteSpace space;
  std::vector<PointSet> ideal_a, ideal_b;
  GridPackPtr pack;
  std::vector<Rat> eps_menu;
};

DeskRegistry make_default_registry();

// Builds the named pair over the registry; throws UnregisteredUniverse when a
// needed piece is missing (e.g. patch values off the grid).
TranslationPair builtin_translation(BuiltinTranslation which, const DeskRegistry& reg);

// --- universes and move builders ---------------------------------------------

// Items are the open sets of the space, item id = index into space.opens().
struct OpensUniverse {
  FiniteSpace space;
  std::vector<PointSet> item_opens;
  std::vector<std::string> item_labels;
  int item_of(PointSet mask) const;
};
OpensUniverse opens_universe(const FiniteSpace& space);
Move opens_move(const OpensUniverse& u, const std::vector<PointSet>& masks, std::string label);
// N(a): non-empty opens containing a; proper unless allow_full.
Move neighborhood_move(const OpensUniverse& u, PointSet a, bool allow_full);

// Items are points 0..n-1.
Move points_move(const FiniteSpace& space, PointSet mask, std::string label);
std::vector<std::string> point_labels(const FiniteSpace& space);

// [center; a, eps] as a move of grid-member items.
Move grid_ball_move(const FunctionGrid& grid, int center, PointSet a, const Rat& eps,
                    std::string label);
std::vector<std::string> grid_labels(const FunctionGrid& grid);

// --- duality suite -------------------------------------------------------------

struct DualitySuite {
  std::vector<DualityInstance> instances;
  long long skipped = 0;  // empty pools or pools beyond the move cap
};

// Exhaustive instantiations of the three duality pairings over all labeled
// topologies on up to max_points points, every relaxed ideal (pairing one) or
// point (pairing three), a small menu of target classes and horizons
// 1..max_horizon. Instances whose canonical pools are empty or larger than
// max_moves are skipped and counted.
DualitySuite duality_suite(int max_points, std::size_t max_moves, int max_horizon);

}  // namespace wb
