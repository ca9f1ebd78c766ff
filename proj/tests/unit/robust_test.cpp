#include <gtest/gtest.h>

#include "common.hpp"
#include "tpg/robust.hpp"
#include "tpg/zone.hpp"

using namespace tpg;
using tpg::test::fixture;
using tpg::test::q;

namespace {

int lookup(std::string_view n) { return n == "x" ? 0 : n == "y" ? 1 : -1; }
Constraint c(const char* text) { return parse_constraint(text, lookup); }

bool in(const Zones& z, const char* x, const char* y) { return zones_contain(z, {q(x), q(y)}); }

TEST(Dbm, CanonicalFormAndEmptiness) {
  Dbm d(2);
  d.constrain(1, 0, Bound::le(2));   // x <= 2
  d.constrain(0, 2, Bound::lt(-1));  // y > 1
  d.constrain(1, 2, Bound::le(0));   // x <= y
  d.canonicalize();
  EXPECT_FALSE(d.empty());
  EXPECT_TRUE(d.contains({q("3/2"), q("3/2")}));
  EXPECT_FALSE(d.contains({q("2"), q("1")}));
  d.constrain(2, 0, Bound::le(1));  // y <= 1 contradicts y > 1
  d.canonicalize();
  EXPECT_TRUE(d.empty());
}

TEST(Dbm, DownClosure) {
  Dbm d(1);
  d.constrain(0, 1, Bound::le(-2));  // x >= 2
  d.constrain(1, 0, Bound::le(3));
  d.canonicalize();
  const Dbm e = d.down(q("1/2"));
  EXPECT_TRUE(e.contains({q("3/2")}));
  EXPECT_FALSE(e.contains({q("1")}));
  EXPECT_TRUE(e.contains({q("3")}));
}

TEST(Zones, ComplementPartitions) {
  const Zones z = zones_of(c("x<=1 || (y>2 && x>3)"), 2);
  const Zones n = complement(z, 2);
  for (int a = 0; a <= 16; ++a)
    for (int b = 0; b <= 16; ++b) {
      Valuation v{Rational(a, 4), Rational(b, 4)};
      for (auto& r : v) r.canonicalize();
      EXPECT_NE(zones_contain(z, v), zones_contain(n, v));
      EXPECT_EQ(zones_contain(z, v), eval_constraint(c("x<=1 || (y>2 && x>3)"), v));
    }
}

TEST(Erosion, ShrinksUpperBounds) {
  const Zones e = erode(c("x<=1"), 2, q("1/2"));
  EXPECT_TRUE(in(e, "1/2", "0"));
  EXPECT_FALSE(in(e, "3/4", "0"));
  const Zones up = erode(c("x>=1"), 2, q("1/2"));
  EXPECT_TRUE(in(up, "1", "0"));
  EXPECT_FALSE(in(up, "3/4", "0"));
}

TEST(Erosion, PointGuardsVanish) {
  EXPECT_TRUE(erode(c("x==1"), 2, q("1/10")).empty());
  EXPECT_TRUE(in(erode(c("x==1"), 2, q("0")), "1", "7"));
}

TEST(Erosion, UnionIsNotDistributive) {
  const Zones whole = erode(c("x<=1 || (x>=1 && x<=2)"), 2, q("1/2"));
  EXPECT_TRUE(in(whole, "3/4", "0"));
  EXPECT_TRUE(in(whole, "3/2", "0"));
  EXPECT_FALSE(in(whole, "7/4", "0"));
  EXPECT_FALSE(in(erode(c("x<=1"), 2, q("1/2")), "3/4", "0"));
  EXPECT_FALSE(in(erode(c("x>=1 && x<=2"), 2, q("1/2")), "3/4", "0"));
}

TEST(Erosion, GuardFormIsExact) {
  // integral bounds: scale by 4 first, then erode by 1
  const Constraint g = scale(c("x<=2 && y>1"), 4);
  const Constraint e = erode_guard(g, 2, 1);
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= 12; ++b) {
      const Valuation v{Rational(a), Rational(b)};
      EXPECT_EQ(eval_constraint(e, v), a <= 7 && b > 4) << a << "," << b;
    }
  EXPECT_EQ(erode_guard(g, 2, 0), g);
}

TEST(JitterGame, ShapeAndCounts) {
  const TimedGame g = fixture("fig1");
  const JitterGame j = build_jitter_game(g, {q("1/4"), q("1/2")});
  EXPECT_EQ(j.scale, 4);
  EXPECT_EQ(j.base_locations, static_cast<int>(g.locations.size()));
  EXPECT_EQ(j.game.clocks[j.z].name, "z");
  const auto have = jitter_counts(j), cap = jitter_bounds(g);
  EXPECT_LE(have.locations, cap.locations);
  EXPECT_LE(have.p1_edges, cap.p1_edges);
  EXPECT_LE(have.p2_edges, cap.p2_edges);
  for (std::size_t l = g.locations.size(); l < j.game.locations.size(); ++l) {
    EXPECT_GE(j.via_edge[l], 0);
    EXPECT_EQ(j.origin[l], g.edges[j.via_edge[l]].source);
  }
}

TEST(JitterGame, LiftScalesStates) {
  const TimedGame g = fixture("example_one_lemma");
  const JitterGame j = build_jitter_game(g, {q("1/3"), q("0")});
  const ConcreteState s = lift_state(j, tpg::test::query(g, "late"));
  EXPECT_EQ(s.valuation[g.find_clock("x")], q("21/2"));
  EXPECT_EQ(s.valuation[g.find_clock("y")], q("9"));
  EXPECT_EQ(s.valuation[j.z], 0);
}

TEST(BoundedRobust, ZeroJitterKeepsIntegralWins) {
  const TimedGame g = fixture("fig1");
  const auto origin = tpg::test::query(g, "origin");
  EXPECT_TRUE(solve_bounded_robust(g, {0, 0}, {origin}).wins(origin));
  EXPECT_FALSE(solve_bounded_robust(g, {q("1/2"), 0}, {origin}).wins(origin));
}

TEST(BoundedRobust, FreshClockAvoidsNameClash) {
  const TimedGame g = parse_game(R"(game g
clock z max 1
loc a parity 0
edge p1 go from a to a guard "z<=1" reset z
state s a z=0
)");
  const JitterGame j = build_jitter_game(g, {q("1/2"), 0});
  EXPECT_NE(j.game.clocks[j.z].name, "z");
  EXPECT_EQ(j.game.clock_count(), 2);
}

}  // namespace
