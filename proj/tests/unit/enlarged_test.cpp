#include <gtest/gtest.h>

#include "common.hpp"
#include "tpg/enlarged.hpp"
#include "tpg/reduction.hpp"
#include "tpg/solver.hpp"

using namespace tpg;
using tpg::test::fixture;
using tpg::test::q;

namespace {

TEST(ExtParity, Table) {
  ExtRegion r;
  EXPECT_EQ(ext_parity(r, Mode::Exact), 0);
  r.tbl1 = true;
  EXPECT_EQ(ext_parity(r, Mode::Exact), 1);
  r.tick = true;
  r.p = 3;
  EXPECT_EQ(ext_parity(r, Mode::Exact), 5);
  r.rb1 = false;
  EXPECT_EQ(ext_parity(r, Mode::Exact), 5);
  EXPECT_EQ(ext_parity(r, Mode::LimitRobust), 1);
}

TEST(MoveGenerator, ChainStopsAtInvariant) {
  const TimedGame g = fixture("deadline");
  MoveGenerator gen(g, Mode::Exact);
  const ClockSpace& cs = gen.space();
  // clocks x, z
  EXPECT_EQ(gen.chain(region_of(cs, 0, {q("0"), q("0")})).size(), 3u);
  EXPECT_EQ(gen.chain(region_of(cs, 0, {q("1/2"), q("0")})).size(), 3u);  // z adds a point region
  EXPECT_EQ(gen.chain(region_of(cs, 0, {q("1/2"), q("1/4")})).size(), 2u);
  EXPECT_EQ(gen.chain(region_of(cs, 0, {q("1"), q("0")})).size(), 1u);
}

TEST(MoveGenerator, ActionsNeedGuardAndTargetInvariant) {
  const TimedGame g = parse_game(R"(game g
clock x max 2
loc a parity 0
loc b invariant "x<=1" parity 0
edge p1 in from a to b
state s a x=0
)");
  MoveGenerator gen(g, Mode::Exact);
  auto acts = [&](const char* x) {
    int n = 0;
    for (const auto& m : gen.moves(seed_region(region_of(g, make_state(g, "a", {{"x", q(x)}})))))
      n += m.action >= 0 && m.j == 0;
    return n;
  };
  EXPECT_EQ(acts("1/2"), 1);
  EXPECT_EQ(acts("3/2"), 0);  // x is not reset, b would be entered outside its invariant
}

TEST(ExtGraph, TickAndParityBookkeeping) {
  const TimedGame g = fixture("idle");
  const ExtGraph graph = build_ext_region_graph(g, Mode::Exact, default_seeds(g));
  bool ticked = false;
  for (std::uint32_t n = 0; n < graph.size(); ++n) {
    const auto& r = graph.nodes[n];
    if (r.tick) {
      ticked = true;
      EXPECT_EQ(graph.priority(n), r.p + 2);
    }
    EXPECT_LT(r.p, graph.game.order());
    for (const auto& m : graph.moves_of(n)) EXPECT_LT(m.target, graph.size());
  }
  EXPECT_TRUE(ticked);
  for (auto s : graph.seeds) EXPECT_FALSE(graph.nodes[s].tick);
}

TEST(ExtGraph, SeedsAreFound) {
  const TimedGame g = fixture("fig1");
  const auto seeds = default_seeds(g);
  const ExtGraph graph = build_ext_region_graph(g, Mode::Exact, seeds);
  for (const auto& s : seeds) EXPECT_GE(graph.find(seed_region(s)), 0) << to_string(g, s);
}

TEST(Reduction, DummiesHaveOneEntrySuccessor) {
  const TimedGame g = fixture("fig1");
  const ExtGraph graph = build_ext_region_graph(g, Mode::Exact, default_seeds(g));
  const FiniteParityGame with = build_af_star(graph, true);
  std::size_t dummies = 0;
  for (std::uint32_t v = 0; v < with.size(); ++v) {
    if (with.tag[v].stage != Stage::Dummy) continue;
    ++dummies;
    ASSERT_EQ(with.succ_end(v) - with.succ_begin(v), 1);
    EXPECT_EQ(with.tag[*with.succ_begin(v)].stage, Stage::Entry);
  }
  const FiniteParityGame without = build_af_star(graph);
  EXPECT_EQ(without.size() + dummies, with.size());
  EXPECT_TRUE(without.total());
}

TEST(Reduction, ProjectionsAgreeOnFixtures) {
  for (const char* name : {"fig1", "example_one_lemma", "open_counterex", "deadline", "idle"}) {
    const TimedGame g = fixture(name);
    for (Mode mode : {Mode::Exact, Mode::LimitRobust}) {
      const ExtGraph graph = build_ext_region_graph(g, mode, default_seeds(g));
      const FiniteParityGame af = build_af(graph), star = build_af_star(graph), dum = build_af_star(graph, true);
      const auto a = regstates(af, solve_zielonka(af).win1_flags(), graph.size());
      EXPECT_EQ(a, regstates(star, solve_zielonka(star).win1_flags(), graph.size())) << name;
      EXPECT_EQ(a, regstates(dum, solve_zielonka(dum).win1_flags(), graph.size())) << name;
      EXPECT_LE(star.size(), 8 * graph.size());
    }
  }
}

TEST(Reduction, EntryStatesAreIndexedByRegion) {
  const TimedGame g = fixture("open_counterex");
  const ExtGraph graph = build_ext_region_graph(g, Mode::Exact, default_seeds(g));
  const FiniteParityGame star = build_af_star(graph);
  const auto entry = entry_states(star, graph.size());
  ASSERT_EQ(entry.size(), graph.size());
  for (std::uint32_t r = 0; r < graph.size(); ++r) {
    EXPECT_EQ(star.tag[entry[r]].region, r);
    EXPECT_EQ(star.priority[entry[r]], static_cast<std::uint32_t>(graph.priority(r)));
  }
}

}  // namespace
