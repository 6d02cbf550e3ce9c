#pragma once

#include "workbench/game.hpp"

#include <optional>

namespace wb {

enum class Winner { One, Two };

struct SolveReport {
  Winner winner_full = Winner::One;
  bool two_has_markov = false;
  bool one_has_predetermined = false;
  std::optional<MarkovStrategyTwo> markov_witness;
  std::optional<PredeterminedStrategy> predetermined_witness;
  std::optional<FullStrategyOne> one_full_witness;
  std::optional<FullStrategyTwo> two_full_witness;
  // Deterministic pre-flight cost of the exhaustive searches (the value
  // compared against the budget), identical across solver variants.
  long long nodes = 0;
};

struct SolveOptions {
  long long budget = 200'000'000;
  int threads = 0;  // 0: WORKBENCH_THREADS or the OpenMP default
};

// Exact solve by backward induction over a precomputed win table, with
// OpenMP-parallel table fill and limited-strategy enumeration. Results are
// bit-identical for any worker count (lowest-index witnesses).
SolveReport solve(const GameSpec& game, const SolveOptions& opts = {});

// Plain recursive reference implementation, kept serial and unclever; used to
// cross-check the parallel kernels.
SolveReport solve_reference(const GameSpec& game, const SolveOptions& opts = {});

// S1-style selection principle: One has no winning predetermined strategy.
bool s1_holds(const GameSpec& game, const SolveOptions& opts = {});

// The pre-flight node count charged against the budget.
long long solve_cost_estimate(const GameSpec& game);

// Equality of everything observable (winner, flags, witnesses, nodes).
bool reports_equal(const SolveReport& a, const SolveReport& b);

int effective_threads(int requested);

}  // namespace wb
