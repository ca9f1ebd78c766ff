#include <gtest/gtest.h>

#include "common.hpp"
#include "tpg/harness.hpp"
#include "tpg/solver.hpp"

using namespace tpg;
using tpg::test::fixture;
using tpg::test::q;

namespace {

FiniteParityGame from_pg(const char* text) { return parse_pgsolver(text); }

TEST(Solvers, SelfLoops) {
  const auto g = from_pg("parity 1;\n0 0 0 0,1;\n1 1 1 1;\n");
  for (const auto& s : {solve_zielonka(g), solve_spm(g)}) {
    EXPECT_EQ(s.winner, (std::vector<std::uint8_t>{1, 2}));
    EXPECT_EQ(s.strategy[0], 0);
  }
}

TEST(Solvers, HigherPriorityDecides) {
  // player 2 at state 0 chooses between a cycle through 2 and one through 3
  const auto g = from_pg("parity 2;\n0 1 1 1,2;\n1 2 0 0;\n2 3 0 0;\n");
  for (const auto& s : {solve_zielonka(g), solve_spm(g)}) {
    EXPECT_EQ(s.winner, (std::vector<std::uint8_t>{2, 2, 2}));
    EXPECT_EQ(s.strategy[0], 2);
  }
}

TEST(Solvers, AgreeWithBruteForce) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto g = random_parity_game(seed, 8, 4);
    const auto b = brute_force_parity(g);
    const auto z = solve_zielonka(g), p = solve_spm(g);
    ASSERT_EQ(z.winner, b.winner) << "seed " << seed;
    ASSERT_EQ(p.winner, b.winner) << "seed " << seed;
    EXPECT_EQ(check_solution(g, z), "") << "seed " << seed;
    EXPECT_EQ(check_solution(g, p), "") << "seed " << seed;
  }
}

TEST(Solvers, CheckSolutionRejectsBadStrategy) {
  const auto g = from_pg("parity 2;\n0 0 0 0,1;\n1 1 1 1;\n");
  Solution s = solve_zielonka(g);
  ASSERT_EQ(s.strategy[0], 0);
  s.strategy[0] = 1;
  EXPECT_NE(check_solution(g, s), "");
  Solution flipped = solve_zielonka(g);
  flipped.winner[1] = 1;
  EXPECT_NE(check_solution(g, flipped), "");
}

TEST(Solvers, SccOrderPutsSinksFirst) {
  const auto g = from_pg("parity 2;\n0 0 0 1;\n1 0 0 2;\n2 0 0 2;\n");
  const auto comps = strongly_connected_components(g);
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps.front(), (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(comps.back(), (std::vector<std::uint32_t>{0}));
}

TEST(PgSolver, RoundTrip) {
  const auto g = random_parity_game(42, 8, 4);
  const auto back = parse_pgsolver(to_pgsolver(g));
  EXPECT_EQ(back.owner, g.owner);
  EXPECT_EQ(back.priority, g.priority);
  EXPECT_EQ(back.succ, g.succ);
  EXPECT_THROW(parse_pgsolver("parity 1;\n0 0 0 5;\n"), std::exception);
}

TEST(Analysis, Fig1Strategy) {
  const TimedGame g = fixture("fig1");
  const Analysis exact = analyze(g, Mode::Exact);
  const Region corner = region_of(g, tpg::test::query(g, "corner"));
  ASSERT_TRUE(exact.wins(corner));
  // at x=y=1 only an immediate a11 keeps player 1 out of l3
  const auto c = exact.choice_at(corner);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (RegionChoice{false, 0, g.find_action("a11")}));
}

TEST(Analysis, LemmaStrategyActsBeforeFour) {
  const TimedGame g = fixture("example_one_lemma");
  const Analysis a = analyze(g, Mode::Exact);
  // in 3 < x < 4 waiting or relinquishing lets player 2 reach x = 4
  const Region late = region_of(g, tpg::test::query(g, "late"));
  ASSERT_TRUE(a.wins(late));
  const auto c = a.choice_at(late);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (RegionChoice{false, 0, g.find_action("a1")}));
  EXPECT_FALSE(a.wins(region_of(g, make_state(g, "l0", {{"x", q("4")}, {"y", q("3")}}))));
}

TEST(Analysis, WinningSetIsClosedUnderSeeds) {
  const TimedGame g = fixture("open_counterex");
  const Analysis a = analyze(g, Mode::Exact);
  for (const auto& r : a.winning_regions()) EXPECT_TRUE(a.wins(r));
  EXPECT_TRUE(a.wins(region_of(g, tpg::test::query(g, "start"))));
}

TEST(Receptiveness, Fixtures) {
  auto r = check_receptive(fixture("deadline"));
  EXPECT_TRUE(r.player1);
  EXPECT_FALSE(r.player2);
  r = check_receptive(fixture("idle"));
  EXPECT_TRUE(r.player1 && r.player2);
  const TimedGame swapped = swap_roles(fixture("fig1"));
  for (const auto& e : swapped.edges) EXPECT_EQ(e.owner == Player::One, e.action >= 0 && swapped.action_owner[e.action] == Player::One);
  EXPECT_FALSE(swapped.relinquish);
}

TEST(Receptiveness, MonotoneUnderAddedEdges) {
  // extra moves for a player never take its receptiveness away
  for (const char* name : {"deadline", "fig1", "open_counterex", "idle"}) {
    const TimedGame g = fixture(name);
    const auto before = check_receptive(g);
    for (Player p : {Player::One, Player::Two}) {
      std::string text = serialize_game(g);
      text += std::string("edge ") + (p == Player::One ? "p1" : "p2") + " extra_move from " + g.locations[0].name + " to " +
              g.locations.back().name + "\n";
      const auto after = check_receptive(parse_game(text));
      if (p == Player::One && before.player1) EXPECT_TRUE(after.player1) << name;
      if (p == Player::Two && before.player2) EXPECT_TRUE(after.player2) << name;
    }
  }
}

}  // namespace
