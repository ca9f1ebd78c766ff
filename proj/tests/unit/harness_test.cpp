#include <gtest/gtest.h>

#include "common.hpp"
#include "tpg/harness.hpp"

using namespace tpg;
using tpg::test::fixture;

namespace {

TEST(RandomGames, DeterministicPerSeed) {
  for (std::uint64_t s : {1u, 7u, 99u}) {
    RandomGameSpec spec;
    spec.seed = s;
    EXPECT_EQ(serialize_game(random_timed_game(spec)), serialize_game(random_timed_game(spec)));
    EXPECT_EQ(to_pgsolver(random_parity_game(s)), to_pgsolver(random_parity_game(s)));
  }
  RandomGameSpec a, b;
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(serialize_game(random_timed_game(a)), serialize_game(random_timed_game(b)));
}

TEST(RandomGames, RespectLimits) {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    RandomGameSpec spec;
    spec.seed = s;
    const TimedGame g = random_timed_game(spec);
    EXPECT_LE(static_cast<int>(g.locations.size()), spec.max_locations);
    EXPECT_LE(g.clock_count(), spec.max_clocks);
    ASSERT_FALSE(g.queries.empty());
    EXPECT_EQ(g.queries[0].state.location, 0);
    const auto pg = random_parity_game(s, 8, 3);
    EXPECT_LE(pg.size(), 8u);
    EXPECT_LE(pg.max_priority(), 2u);
    EXPECT_TRUE(pg.total());
  }
}

TEST(BruteForce, SmallKnownGame) {
  // player 1 escapes the odd loop through state 1
  const auto g = parse_pgsolver("parity 2;\n0 1 0 0,1;\n1 2 1 2;\n2 0 0 1;\n");
  const auto s = brute_force_parity(g);
  EXPECT_EQ(s.winner, (std::vector<std::uint8_t>{1, 1, 1}));
}

TEST(Sampling, FixturesAgree) {
  for (const char* name : {"fig1", "example_one_lemma", "open_counterex", "deadline", "idle"}) {
    const auto rep = sample_region_semantics(fixture(name), 300, 3);
    EXPECT_EQ(rep.divergences, 0u) << name << ": " << (rep.messages.empty() ? "" : rep.messages.front());
    EXPECT_GT(rep.trials, 0u);
  }
  const auto rep = sample_region_semantics(fixture("fig1"), 1000, 1);
  EXPECT_GT(rep.point_states, 0u);
  EXPECT_GT(rep.ties, 0u);
}

TEST(CrossCheck, IdleAndRandom) {
  const auto idle = cross_check(fixture("idle"));
  EXPECT_TRUE(idle.ok) << idle.detail;
  EXPECT_TRUE(idle.spm_used);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    RandomGameSpec spec;
    spec.seed = s;
    const auto rep = cross_check(random_timed_game(spec), Mode::LimitRobust);
    EXPECT_TRUE(rep.ok) << "seed " << s << ": " << rep.detail;
  }
}

TEST(Shrink, KeepsFailureAndDropsTheRest) {
  const TimedGame g = fixture("fig1");
  // "fails" while some edge still carries a12
  auto fails = [](const TimedGame& t) {
    for (const auto& e : t.edges)
      if (t.action_names[e.action] == "a12") return true;
    return false;
  };
  const TimedGame small = shrink_game(g, fails);
  EXPECT_TRUE(fails(small));
  EXPECT_EQ(small.edges.size(), 1u);
  EXPECT_LE(small.locations.size(), 2u);
}

TEST(Shrink, RemoveLocationRenumbers) {
  const TimedGame g = remove_location(fixture("fig1"), 3);
  EXPECT_EQ(g.locations.size(), 3u);
  for (const auto& e : g.edges) {
    EXPECT_LT(e.target, 3);
    EXPECT_LT(e.source, 3);
  }
}

}  // namespace
