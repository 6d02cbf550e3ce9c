#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/analyzers.hpp"
#include "workbench/errors.hpp"

using namespace wb;

TEST_CASE("indicator example report") {
  IndicatorCuscoReport rep = analyze_indicator_example();
  CHECK(rep.minimal_cusco == CuscoVerdict::Yes);
  CHECK(!rep.continuous);
  REQUIRE(rep.preimage.set.pieces().size() == 2);
  CHECK(rep.preimage.set.pieces()[0].lo == 0);
  CHECK(rep.preimage.set.pieces()[1].lo == 1);
  CHECK(!rep.preimage.open);
  CHECK(rep.phi.section_at(0) == CompactSet::interval(0, 1));
}

TEST_CASE("sequence family closed forms") {
  CHECK(SequenceFamily::a(1) == Rat(1, 2));
  CHECK(SequenceFamily::b(1) == Rat(2, 3));
  CHECK(SequenceFamily::b(3) == SequenceFamily::a(4));
  CHECK(SequenceFamily::mid(1) == Rat(7, 12));
  // The ramp climbs from 0 at a_n to 1 at mid_n and would reach 2 at b_n.
  for (int n : {0, 1, 5}) {
    Affine r = SequenceFamily::ramp(n);
    CHECK(r.at(SequenceFamily::a(n)) == 0);
    CHECK(r.at(SequenceFamily::mid(n)) == 1);
    CHECK(r.at(SequenceFamily::b(n)) == 2);
  }
}

TEST_CASE("truncated sequence function") {
  PiecewiseFn f = SequenceFamily::truncated(2);
  CHECK(f.domain_hi() == SequenceFamily::b(2));
  CHECK(f.eval(SequenceFamily::mid(1)) == 2);
  CHECK(f.eval(SequenceFamily::a(2)) == 2);
  CHECK(is_quasicontinuous(f).ok);
}

TEST_CASE("midpoint augmentation at a small truncation") {
  MidpointAugmentationReport rep = analyze_midpoint_augmentation(3);
  CHECK(rep.sections_ok);
  CHECK(rep.limit_section == CompactSet({{0, 1}, {2, 2}}));
  CHECK(rep.f_bar_truncation_minimal_usco);
  CHECK(rep.f_bar_with_limit_usco);
  CHECK(!rep.g_usco);
  CHECK(rep.witness_y == Rat(3, 2));
  CHECK(rep.witness_x_limit == 1);
  REQUIRE(!rep.witness_sequence.empty());
  CHECK(rep.witness_sequence.back() == SequenceFamily::mid(3));
}

TEST_CASE("tail subcontinuity from the declared closed form") {
  CHECK(is_subcontinuous(SequenceTail{2, 0}));
  CHECK(tail_cluster_set(SequenceTail{2, 0}) == CompactSet({{0, 1}, {2, 2}}));
  // Plateau value n marches off to infinity: no accumulation point.
  CHECK(!is_subcontinuous(SequenceTail{0, 1}));
  CHECK_THROWS_AS(tail_cluster_set(SequenceTail{0, 1}), wb::ValidationError);
}

TEST_CASE("augment midpoints leaves single bands alone") {
  SetValuedMap phi = graph_closure(PiecewiseFn::indicator(-1, 2, 0, 1));
  SetValuedMap g = augment_midpoints(phi);
  CHECK(g.section_at(0) == CompactSet({{0, 0}, {Rat(1, 2), Rat(1, 2)}, {1, 1}}));
  CHECK(g.section_at(Rat(1, 2)) == CompactSet::point(1));
}
