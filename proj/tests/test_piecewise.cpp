#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "workbench/errors.hpp"
#include "workbench/piecewise.hpp"

using namespace wb;

namespace {

SetValuedMap indicator_bar() {
  return graph_closure(PiecewiseFn::indicator(-1, 2, 0, 1));
}

SetValuedMap indicator_check() { return convexify(indicator_bar()); }

}  // namespace

TEST_CASE("evaluation, limits and refinement") {
  PiecewiseFn f({0, 1, 2}, {0, 5, 2}, {Affine{1, 0}, Affine{-1, 3}});
  CHECK(f.eval(Rat(1, 2)) == Rat(1, 2));
  CHECK(f.eval(1) == 5);
  CHECK(f.left_limit(1) == 1);
  CHECK(f.right_limit(1) == 2);
  PiecewiseFn g = f.refined({Rat(1, 2), Rat(3, 2)});
  CHECK(g.breakpoints().size() == 5);
  CHECK(g == f);
  CHECK_THROWS_AS(f.eval(3), DomainMismatch);
}

TEST_CASE("graph closure of the indicator") {
  SetValuedMap phi = indicator_bar();
  CHECK(phi.section_at(0) == CompactSet({{0, 0}, {1, 1}}));
  CHECK(phi.section_at(1) == CompactSet({{0, 0}, {1, 1}}));
  CHECK(phi.section_at(Rat(-1, 2)) == CompactSet::point(0));
  CHECK(phi.section_at(Rat(1, 2)) == CompactSet::point(1));
  CHECK(phi.section_at(-1) == CompactSet::point(0));
  CHECK(phi.section_at(2) == CompactSet::point(0));
}

TEST_CASE("graph closure of a continuous function is pointwise") {
  PiecewiseFn f({0, 1, 2}, {1, 2, 3}, {Affine{1, 1}, Affine{1, 1}});
  SetValuedMap phi = graph_closure(f);
  for (const auto& s : phi.sections()) CHECK(s.intervals().size() == 1);
  CHECK(phi.section_at(1) == CompactSet::point(2));
  CHECK(is_minimal_usco(phi));
  CHECK(is_minimal_cusco(phi) == CuscoVerdict::Yes);
}

TEST_CASE("jump at one half") {
  PiecewiseFn f({0, Rat(1, 2), 1}, {0, 1, 1}, {Affine{0, 0}, Affine{0, 1}});
  SetValuedMap phi = graph_closure(f);
  CHECK(phi.section_at(Rat(1, 2)) == CompactSet({{0, 0}, {1, 1}}));
}

TEST_CASE("convexify") {
  CHECK(indicator_check().section_at(0) == CompactSet::interval(0, 1));
  SetValuedMap c = convexify(indicator_check());
  CHECK(c == indicator_check());  // idempotent
  SetValuedMap three = SetValuedMap::constant(0, 1, CompactSet({{1, 1}, {Rat(3, 2), Rat(3, 2)}, {2, 2}}));
  CHECK(convexify(three).section_at(Rat(1, 2)) == CompactSet::interval(1, 2));
}

TEST_CASE("is_usco") {
  CHECK(is_usco(indicator_bar()).ok);
  CHECK(is_usco(SetValuedMap::constant(0, 1, CompactSet::interval(0, 1))).ok);
  // Breakpoint section {0} with an adjacent band limit 1.
  SetValuedMap bad({0, 1, 2}, {CompactSet::point(1), CompactSet::point(0), CompactSet::point(1)},
                   {{Band{Affine{0, 1}, Affine{0, 1}}}, {Band{Affine{0, 1}, Affine{0, 1}}}});
  UscoCheck check = is_usco(bad);
  REQUIRE(!check.ok);
  CHECK(check.witness->first == 1);
  CHECK(check.witness->second == 1);
}

TEST_CASE("quasicontinuity criterion") {
  QuasiCheck ind = is_quasicontinuous(PiecewiseFn::indicator(-1, 2, 0, 1));
  CHECK(ind.ok);
  // Isolated value: distinct from both one-sided limits.
  PiecewiseFn spike({0, 1, 2}, {0, 5, 2}, {Affine{1, 0}, Affine{-1, 3}});
  QuasiCheck bad = is_quasicontinuous(spike);
  REQUIRE(!bad.ok);
  CHECK(*bad.witness == 1);
  CHECK(is_quasicontinuous(PiecewiseFn::constant(0, 1, 3)).ok);
  CHECK(is_subcontinuous(spike));
}

TEST_CASE("minimal usco decisions") {
  CHECK(is_minimal_usco(indicator_bar()));
  CHECK(!is_minimal_usco(SetValuedMap::constant(0, 1, CompactSet::interval(0, 1))));
  CHECK_THROWS_AS(
      is_minimal_usco(SetValuedMap({0, 1}, {CompactSet::point(0), CompactSet::point(5)},
                                   {{Band{Affine{0, 0}, Affine{0, 0}}}})),
      NotUsco);
}

TEST_CASE("minimal cusco decisions") {
  CHECK(is_minimal_cusco(indicator_check()) == CuscoVerdict::Yes);
  CHECK(is_minimal_cusco(SetValuedMap::constant(0, 1, CompactSet::interval(0, 1))) ==
        CuscoVerdict::No);
  // Not convex-valued: not a cusco at all.
  CHECK(is_minimal_cusco(indicator_bar()) == CuscoVerdict::No);
}

TEST_CASE("vietoris preimage of the indicator example") {
  VietorisPreimage pre =
      vietoris_preimage(indicator_check(), {{Rat(-1, 2), Rat(3, 4)}, {Rat(1, 4), Rat(3, 2)}});
  REQUIRE(pre.set.pieces().size() == 2);
  CHECK(pre.set.pieces()[0].lo == 0);
  CHECK(pre.set.pieces()[0].is_point());
  CHECK(pre.set.pieces()[1].lo == 1);
  CHECK(pre.set.pieces()[1].is_point());
  CHECK(!pre.open);
}

TEST_CASE("vietoris preimage trivial and affine cases") {
  VietorisPreimage whole = vietoris_preimage(indicator_check(), {{Rat(-100), Rat(100)}});
  REQUIRE(whole.set.pieces().size() == 1);
  CHECK(whole.set.pieces()[0].lo == -1);
  CHECK(whole.set.pieces()[0].hi == 2);
  CHECK(whole.open);

  // Singleton-affine map: the preimage of one interval is an open interval.
  SetValuedMap line = graph_closure(PiecewiseFn({0, 2}, {0, 2}, {Affine{1, 0}}));
  VietorisPreimage pre = vietoris_preimage(line, {{Rat(1, 2), Rat(3, 2)}});
  REQUIRE(pre.set.pieces().size() == 1);
  CHECK(pre.set.pieces()[0].lo == Rat(1, 2));
  CHECK(pre.set.pieces()[0].hi == Rat(3, 2));
  CHECK(pre.set.pieces()[0].lo_open);
  CHECK(pre.open);
}

TEST_CASE("ball membership") {
  SetValuedMap zero = SetValuedMap::constant(0, 1, CompactSet::point(0));
  SetValuedMap three_quarters = SetValuedMap::constant(0, 1, CompactSet::point(Rat(3, 4)));
  CompactSet whole = CompactSet::interval(0, 1);
  CHECK(ball_membership(zero, zero, whole, {Rat(1, 100), false}));
  CHECK(ball_membership(zero, three_quarters, whole, {Rat(1), false}));
  CHECK(!ball_membership(zero, three_quarters, whole, {Rat(1, 2), false}));

  SetValuedMap ind = indicator_check();
  SetValuedMap zero_wide = SetValuedMap::constant(-1, 2, CompactSet::point(0));
  CHECK(ball_membership(ind, zero_wide, CompactSet::point(Rat(1, 2)), {Rat(2), false}));
  CHECK(!ball_membership(ind, zero_wide, CompactSet::point(Rat(1, 2)), {Rat(1), false}));
  CHECK_THROWS_AS(ball_membership(zero, zero_wide, whole, {Rat(1), false}), DomainMismatch);
}

TEST_CASE("ball membership at a crossing needs the refinement cut") {
  // phi = x, psi = 1 - x on [0,1]: sup distance on [0,1] is 1, attained at the
  // ends, while the midpoint distance is 0.
  SetValuedMap phi = graph_closure(PiecewiseFn({0, 1}, {0, 1}, {Affine{1, 0}}));
  SetValuedMap psi = graph_closure(PiecewiseFn({0, 1}, {1, 0}, {Affine{-1, 1}}));
  CompactSet whole = CompactSet::interval(0, 1);
  CHECK(!ball_membership(phi, psi, whole, {Rat(1), false}));
  CHECK(ball_membership(phi, psi, whole, {Rat(3, 2), false}));
  CHECK(ball_membership(phi, psi, CompactSet::point(Rat(1, 2)), {Rat(1, 10), false}));
}

TEST_CASE("patch") {
  PiecewiseFn g = PiecewiseFn::indicator(0, 4, 0, 1);
  PiecewiseFn h = patch_const(1, g, {{2, 3}});
  CHECK(h.eval(Rat(5, 2)) == 1);
  CHECK(h.eval(2) == 1);
  CHECK(h.eval(3) == 1);
  CHECK(h.eval(Rat(7, 2)) == 0);
  CHECK(h.eval(Rat(1, 2)) == 1);
  CHECK(h.eval(Rat(3, 2)) == 0);

  // Empty u leaves g untouched; equal constants collapse.
  CHECK(patch_const(1, g, {}) == g);
  PiecewiseFn c = PiecewiseFn::constant(0, 4, 5);
  CHECK(patch_const(5, c, {{1, 2}}) == c);
}

TEST_CASE("patch with a constant preserves the selection properties") {
  corpus::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    PiecewiseFn g = corpus::random_qs_fn(rng);
    Rat lo = Rat(rng.range(0, 2));
    Rat hi = lo + Rat(rng.range(1, 2));
    PiecewiseFn h = patch_const(Rat(rng.range(-2, 2)), g, {{lo, hi}});
    CHECK(is_quasicontinuous(h).ok);
    CHECK(is_subcontinuous(h));
    CHECK(is_minimal_cusco(convexify(graph_closure(h))) == CuscoVerdict::Yes);
  }
}

TEST_CASE("cusco agree patch on the indicator") {
  SetValuedMap phi = indicator_check();
  CompactSet a = CompactSet::point(0);
  std::vector<Interval> v = {{Rat(-1, 4), Rat(1, 4)}};
  std::vector<Interval> u = {{Rat(-1, 2), Rat(1, 2)}};
  CuscoAgreePatch out = cusco_agree_patch(phi, a, u, v, 1);
  CHECK(out.psi.section_at(0) == phi.section_at(0));
  CHECK(out.g.eval(1) == 1);
  CHECK(out.g.eval(Rat(3, 2)) == 1);
  CHECK(out.g.eval(-1) == 1);
  CHECK(out.g.eval(0) == 1);  // max selection of phi at 0
  CHECK(is_minimal_cusco(out.psi) == CuscoVerdict::Yes);

  // The numbered variant takes any patch value.
  CuscoAgreePatch five = cusco_agree_patch(phi, a, u, v, 5);
  CHECK(five.g.eval(2) == 5);
  CHECK(five.g.eval(Rat(3, 4)) == 5);

  // Patching the zero map with its own value is the identity.
  SetValuedMap zero = SetValuedMap::constant(-1, 2, CompactSet::point(0));
  CuscoAgreePatch same = cusco_agree_patch(zero, a, u, v, 0);
  CHECK(same.psi == zero);

  CHECK_THROWS_AS(cusco_agree_patch(phi, CompactSet::point(1), u, v, 1), ChainViolation);
  CHECK_THROWS_AS(cusco_agree_patch(phi, a, {{Rat(-1, 8), Rat(1, 8)}}, v, 1), ChainViolation);
}

TEST_CASE("dense propagation") {
  SetValuedMap phi = indicator_check();
  PropagationCheck same = dense_propagation_check(phi, phi, {Rat(1), true});
  CHECK(same.ok);
  CHECK(same.hypothesis_held);

  // A selection perturbed on cell interiors only: breakpoints inherit the bound.
  PiecewiseFn f = max_selection(phi);
  std::vector<Affine> cells;
  for (const auto& c : f.cells()) cells.push_back(Affine{c.slope, c.intercept + Rat(1, 2)});
  PiecewiseFn g(f.breakpoints(), f.values(), cells);
  SetValuedMap psi = convexify(graph_closure(g));
  PropagationCheck shifted = dense_propagation_check(phi, psi, {Rat(1, 2), true});
  CHECK(shifted.ok);
  CHECK(shifted.hypothesis_held);

  CHECK_THROWS_AS(dense_propagation_check(phi, phi, {Rat(1), false}), ValidationError);
}

TEST_CASE("bounded on compact") {
  CHECK(bounded_on_compact(indicator_check()) == 1);
  CHECK(bounded_on_compact(SetValuedMap::constant(0, 1, CompactSet::point(0))) == 0);
  SetValuedMap seven({0, 1, 2},
                     {CompactSet::point(0), CompactSet({{0, 0}, {7, 7}}), CompactSet::point(0)},
                     {{Band{Affine{0, 0}, Affine{0, 0}}}, {Band{Affine{0, 0}, Affine{0, 0}}}});
  CHECK(bounded_on_compact(seven) == 7);
  SetValuedMap not_usco({0, 1}, {CompactSet::point(0), CompactSet::point(5)},
                        {{Band{Affine{0, 0}, Affine{0, 0}}}});
  CHECK_THROWS_AS(bounded_on_compact(not_usco), NotUsco);
}

TEST_CASE("selection regeneration on a random corpus") {
  corpus::Rng rng(123);
  int minimal_seen = 0, non_minimal_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SetValuedMap phi = trial % 3 == 2 ? corpus::random_thick_usco(rng)
                                      : (trial % 3 == 1 ? corpus::random_minimal_cusco(rng)
                                                        : corpus::random_minimal_usco(rng));
    REQUIRE(is_usco(phi).ok);
    if (is_minimal_usco(phi)) {
      ++minimal_seen;
      for (PiecewiseFn sel : {min_selection(phi), max_selection(phi)}) {
        CHECK(is_quasicontinuous(sel).ok);
        CHECK(is_subcontinuous(sel));
        CHECK(graph_closure(sel) == phi);
      }
    } else {
      ++non_minimal_seen;
    }
    CHECK(bounded_on_compact(phi) >= 0);
  }
  CHECK(minimal_seen > 0);
  CHECK(non_minimal_seen > 0);
}

TEST_CASE("graph closure is idempotent through selections") {
  corpus::Rng rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    SetValuedMap phi = corpus::random_minimal_usco(rng);
    CHECK(graph_closure(min_selection(phi)) == phi);
    CHECK(graph_closure(max_selection(phi)) == phi);
    // convexify is idempotent and sectionwise monotone
    SetValuedMap c = convexify(phi);
    CHECK(convexify(c) == c);
    for (std::size_t i = 0; i < phi.sections().size(); ++i)
      CHECK(phi.sections()[i].is_subset_of(c.sections()[i]));
  }
}

TEST_CASE("ball membership against a pointwise sampling oracle") {
  // A positive ball answer promises the relation at every point of a; dense
  // sampling can refute but never prove, so only that direction is asserted,
  // plus exact agreement at all sampled points when the ball is tight.
  corpus::Rng rng(8080);
  for (int trial = 0; trial < 50; ++trial) {
    SetValuedMap phi = corpus::random_two_decker(rng);
    SetValuedMap psi = trial % 2 ? corpus::random_two_decker(rng)
                                 : corpus::random_minimal_cusco(rng);
    CompactSet a = CompactSet::interval(Rat(1, 2), Rat(7, 2));
    Rat eps(rng.range(1, 9), rng.range(1, 2));
    Entourage e{eps, false};
    bool ball = ball_membership(phi, psi, a, e);
    std::vector<Rat> samples;
    for (const auto& x : phi.breakpoints()) samples.push_back(x);
    for (const auto& x : psi.breakpoints()) samples.push_back(x);
    for (int k = 0; k <= 64; ++k) samples.push_back(Rat(1, 2) + Rat(3 * k, 64));
    bool all_samples = true;
    for (const auto& x : samples) {
      if (x < Rat(1, 2) || x > Rat(7, 2)) continue;
      if (!h_entourage_within(phi.section_at(x), psi.section_at(x), e)) all_samples = false;
    }
    if (ball) CHECK(all_samples);
    if (!all_samples) CHECK(!ball);
  }
}

TEST_CASE("vietoris preimage against a pointwise sampling oracle") {
  corpus::Rng rng(9090);
  for (int trial = 0; trial < 50; ++trial) {
    SetValuedMap phi = corpus::random_two_decker(rng);
    std::vector<std::pair<Rat, Rat>> basics;
    int count = rng.range(1, 3);
    for (int i = 0; i < count; ++i) {
      Rat lo = rng.rat(6, 2);
      basics.emplace_back(lo, lo + Rat(rng.range(1, 8), 2));
    }
    VietorisPreimage pre = vietoris_preimage(phi, basics);

    auto oracle = [&](const Rat& x) {
      CompactSet s = phi.section_at(x);
      std::vector<std::pair<Rat, Rat>> cover = basics;
      std::sort(cover.begin(), cover.end());
      std::vector<std::pair<Rat, Rat>> merged;
      for (const auto& b : cover) {
        if (!merged.empty() && b.first < merged.back().second)
          merged.back().second = rat_max(merged.back().second, b.second);
        else
          merged.push_back(b);
      }
      for (const auto& iv : s.intervals()) {
        bool inside = false;
        for (const auto& c : merged)
          if (c.first < iv.lo && iv.hi < c.second) inside = true;
        if (!inside) return false;
      }
      for (const auto& b : basics) {
        bool meets = false;
        for (const auto& iv : s.intervals())
          if (iv.lo < b.second && iv.hi > b.first) meets = true;
        if (!meets) return false;
      }
      return true;
    };

    std::vector<Rat> samples;
    for (const auto& x : phi.breakpoints()) samples.push_back(x);
    for (int k = 0; k <= 97; ++k) samples.push_back(Rat(4 * k, 97));
    for (const auto& piece : pre.set.pieces()) {
      samples.push_back(piece.lo);
      samples.push_back(piece.hi);
      if (!piece.is_point()) samples.push_back((piece.lo + piece.hi) / 2);
    }
    for (const auto& x : samples) {
      if (x < phi.domain_lo() || x > phi.domain_hi()) continue;
      CAPTURE(rat_str(x));
      CHECK(pre.set.contains(x) == oracle(x));
    }
  }
}

TEST_CASE("minimal cusco maps agreeing on an open set agree sectionwise there") {
  corpus::Rng rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    PiecewiseFn f = corpus::random_qs_fn(rng);
    SetValuedMap phi = convexify(graph_closure(f));
    // g agrees with f on (0, 2) and is patched to a constant beyond (3, ...).
    PiecewiseFn g = patch_const(Rat(rng.range(-2, 2)), f, {{3, 5}});
    SetValuedMap psi = convexify(graph_closure(g));
    CHECK(sections_equal_on(phi, psi, CompactSet::interval(Rat(1, 2), Rat(3, 2))));
  }
}
