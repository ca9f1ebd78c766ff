#include <gtest/gtest.h>

#include "common.hpp"
#include "tpg/region.hpp"

#include <map>
#include <set>

using namespace tpg;
using tpg::test::q;

namespace {

TimedGame clocks_only(std::vector<int> ceilings) {
  TimedGame g;
  for (std::size_t i = 0; i < ceilings.size(); ++i) g.clocks.push_back({"c" + std::to_string(i), ceilings[i]});
  g.locations = {{"l0", Constraint(), 0}};
  g.finalize();
  return g;
}

// Textbook region key: capped integer parts, zero flags and the order of the
// fractional parts of clocks at or below their ceiling.
std::vector<long> textbook_key(const std::vector<int>& ceil, const Valuation& v) {
  std::vector<long> key;
  const int n = static_cast<int>(v.size());
  for (int x = 0; x < n; ++x) {
    const bool above = v[x] > ceil[x];
    key.push_back(above ? -1 : static_cast<long>(floor_of(v[x]).get_num().get_si()));
    key.push_back(!above && frac_of(v[x]) == 0);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (v[x] > ceil[x] || v[y] > ceil[y]) {
        key.push_back(2);
        continue;
      }
      const Rational fx = frac_of(v[x]), fy = frac_of(v[y]);
      key.push_back(fx < fy ? 0 : fx == fy ? 1 : 2);
    }
  return key;
}

// Every valuation on a grid of step 1/den over [0, c+2)^n.
std::vector<Valuation> grid(const std::vector<int>& ceil, int den) {
  std::vector<Valuation> out{{}};
  for (int c : ceil) {
    std::vector<Valuation> next;
    for (const auto& v : out)
      for (int k = 0; k < (c + 2) * den; ++k) {
        Valuation w = v;
        Rational r(k, den);
        r.canonicalize();
        w.push_back(r);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

TEST(Regions, CountMatchesTextbookPartition) {
  for (const auto& ceil : std::vector<std::vector<int>>{{1}, {3}, {1, 1}, {2, 1}, {1, 1, 1}}) {
    const TimedGame g = clocks_only(ceil);
    const ClockSpace cs = clock_space(g);
    const auto all = enumerate_regions(g);
    // a grid with step 1/(n+2) hits every region with n clocks
    const auto pts = grid(ceil, static_cast<int>(ceil.size()) + 2);
    std::map<std::vector<long>, Region> seen;
    std::set<Region> hit;
    for (const auto& v : pts) {
      const Region r = region_of(cs, 0, v);
      hit.insert(r);
      auto [it, fresh] = seen.emplace(textbook_key(ceil, v), r);
      EXPECT_TRUE(fresh || it->second == r) << "two regions for one textbook class";
    }
    EXPECT_EQ(seen.size(), hit.size());
    EXPECT_EQ(all.size(), hit.size());
    for (const auto& r : all) EXPECT_TRUE(hit.count(r));
  }
}

TEST(Regions, OneClockCount) {
  // points 0..c, open intervals between them, and one above the ceiling
  for (int c = 1; c <= 5; ++c) EXPECT_EQ(enumerate_regions(clocks_only({c})).size(), static_cast<std::size_t>(2 * c + 2));
}

TEST(Regions, TimeSuccessorChain) {
  const TimedGame g = clocks_only({1});
  const ClockSpace cs = clock_space(g);
  Region r = region_of(cs, 0, {q("0")});
  TimeStep s = time_successor(cs, r);
  EXPECT_EQ(s.region, region_of(cs, 0, {q("1/2")}));
  s = time_successor(cs, s.region);
  EXPECT_EQ(s.region, region_of(cs, 0, {q("1")}));
  s = time_successor(cs, s.region);
  EXPECT_EQ(s.region, region_of(cs, 0, {q("5")}));
  EXPECT_TRUE(time_successor(cs, s.region).absorbing);
}

TEST(Regions, TimeSuccessorAgreesWithElapse) {
  // the first region entered by letting time pass from a representative
  const TimedGame g = clocks_only({2, 1});
  const ClockSpace cs = clock_space(g);
  for (const auto& r : enumerate_regions(g)) {
    const TimeStep s = time_successor(cs, r);
    if (s.absorbing) continue;
    const Valuation v = representative(cs, r);
    // exact distance to the next integer among clocks not above their ceiling
    bool point = false;
    Rational d = -1;
    for (int x = 0; x < cs.size(); ++x) {
      if (v[x] > cs.ceiling[x]) continue;
      const Rational f = frac_of(v[x]);
      if (f == 0) point = true;
      const Rational gap = f == 0 ? Rational(1) : 1 - f;
      if (d < 0 || gap < d) d = gap;
    }
    ASSERT_GT(d, 0);
    // a point region is left at once; an open region ends at the boundary
    const Region next = region_of(cs, 0, elapse(v, point ? Rational(d / 2) : d));
    EXPECT_EQ(next, s.region) << to_string(g, r);
  }
}

TEST(Regions, SatisfactionMatchesSampling) {
  TimedGame g = clocks_only({2, 2});
  auto lookup = [&](std::string_view n) { return g.find_clock(n); };
  const ClockSpace cs = clock_space(g);
  const auto pts = grid({2, 2}, 4);
  for (const char* text : {"c0<=1", "c0>1 && c1<2", "c0==2 || c1<1", "!(c0>=1)", "c1>2"}) {
    const Constraint c = parse_constraint(text, lookup);
    for (const auto& v : pts)
      EXPECT_EQ(region_satisfies(cs, region_of(cs, 0, v), c), eval_constraint(c, v)) << text;
  }
}

TEST(Regions, ResetAndCanonicalStrings) {
  const TimedGame g = clocks_only({1, 1});
  const ClockSpace cs = clock_space(g);
  const Region r = region_of(cs, 0, {q("1/3"), q("2/3")});
  EXPECT_EQ(reset_region(r, {1}), region_of(cs, 0, {q("1/3"), q("0")}));
  EXPECT_EQ(to_string(g, r), "l0 | int c0=0,c1=0 | frac [ {c0} < {c1} ] | above {}");
  EXPECT_TRUE(is_open(r));
  EXPECT_FALSE(is_open(reset_region(r, {0})));
  EXPECT_EQ(project(extend_zero(r), 2), r);
}

TEST(Regions, SuccrListsTimeSuccessors) {
  const TimedGame g = clocks_only({1});
  const ClockSpace cs = clock_space(g);
  const Region r = region_of(cs, 0, {q("0")});
  const auto s = succr(cs, r, 2);
  ASSERT_GE(s.size(), 2u);
  EXPECT_EQ(s[0], r);
  EXPECT_EQ(s[1], region_of(cs, 0, {q("1/2")}));
}

}  // namespace
