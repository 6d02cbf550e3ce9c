// Benchmark: the OpenMP solver kernels against the serial reference on a
// cover game whose win predicate does real mask work per evaluated play.
// The parallel path must return bit-identical reports.

#include "workbench/builtins.hpp"
#include "workbench/solver.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

namespace {

// One offers every proper open of the discrete n-point space in a single
// move; Two hunts for a double-multiplicity cover of the pair ideal. The
// final-layer fill and the Markov scan both walk |opens|^horizon states.
wb::GameSpec bench_game(int points, int horizon) {
  wb::FiniteSpace space = wb::FiniteSpace::discrete(points);
  wb::OpensUniverse ou = wb::opens_universe(space);
  std::vector<wb::PointSet> ideal;
  for (wb::PointSet s = 1; s < space.full(); ++s)
    if (wb::popcount(s) <= 2) ideal.push_back(s);
  wb::GameSpec g;
  g.horizon = horizon;
  g.item_count = static_cast<int>(ou.item_opens.size());
  g.item_labels = ou.item_labels;
  g.pool = {wb::opens_move(ou, space.proper_opens(), "T_X")};
  g.win_for_two = wb::win_large_cover(space, ideal, ou.item_opens, 2);
  g.name = "bench-large-cover";
  return g;
}

template <typename F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int points = argc > 1 ? std::atoi(argv[1]) : 4;
  int horizon = argc > 2 ? std::atoi(argv[2]) : 5;
  int reps = argc > 3 ? std::atoi(argv[3]) : 3;

  wb::GameSpec g = bench_game(points, horizon);
  std::cout << "game: " << g.pool[0].items.size() << "-item move over discrete(" << points
            << "), horizon " << horizon << ", cost estimate " << wb::solve_cost_estimate(g)
            << " nodes\n";

  wb::SolveOptions serial{4'000'000'000LL, 1};
  wb::SolveOptions parallel{4'000'000'000LL, 0};

  wb::SolveReport ref, opt1, optN;
  double t_ref = 0, t_1 = 0, t_n = 0;
  for (int r = 0; r < reps; ++r) {
    t_ref += time_ms([&] { ref = wb::solve_reference(g, serial); });
    t_1 += time_ms([&] { opt1 = wb::solve(g, serial); });
    t_n += time_ms([&] { optN = wb::solve(g, parallel); });
  }
  t_ref /= reps;
  t_1 /= reps;
  t_n /= reps;

  bool same = wb::reports_equal(ref, opt1) && wb::reports_equal(opt1, optN);
  std::cout << "winner: " << (ref.winner_full == wb::Winner::Two ? "Two" : "One")
            << ", markov " << (ref.two_has_markov ? "yes" : "no") << "\n";
  std::cout << "reference (serial recursion): " << t_ref << " ms\n";
  std::cout << "table solver, 1 thread:       " << t_1 << " ms\n";
  std::cout << "table solver, " << wb::effective_threads(0) << " thread(s):    " << t_n
            << " ms\n";
  std::cout << "reports identical: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
