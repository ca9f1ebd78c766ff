// Acceptance runner: one PASS/FAIL line per criterion.
#include "tpg/harness.hpp"
#include "tpg/reduction.hpp"
#include "tpg/robust.hpp"
#include "tpg/solver.hpp"
#include "tpg/zone.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace tpg;

namespace {

const char* kFixtures[] = {"fig1", "example_one_lemma", "open_counterex", "deadline", "idle"};

TimedGame fixture(const std::string& name) { return load_game(std::string(TPG_FIXTURE_DIR) + "/" + name + ".tg"); }

const QueryState& query(const TimedGame& g, const std::string& label) {
  for (const auto& q : g.queries)
    if (q.label == label) return q;
  throw std::runtime_error("no query " + label);
}

// Random games whose hypotheses (receptive for both players) hold.
std::vector<TimedGame> well_formed_games(std::size_t n, std::uint64_t seed0) {
  std::vector<TimedGame> out;
  for (std::uint64_t s = seed0; out.size() < n; ++s) {
    RandomGameSpec spec;
    spec.seed = s;
    TimedGame g = random_timed_game(spec);
    const auto r = check_receptive(g);
    if (r.player1 && r.player2) out.push_back(std::move(g));
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<std::string()> body;  // empty string on success
};

int failures = 0;

void run(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string why;
  try {
    why = c.body();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (why.empty() && secs > c.budget_s) why = "over time budget";
  if (!why.empty()) ++failures;
  std::printf("%s %2d %-28s %8.2fs%s%s\n", why.empty() ? "PASS" : "FAIL", c.id, c.name, secs,
              why.empty() ? "" : "  ", why.c_str());
  std::fflush(stdout);
}

std::string fig1_exact() {
  const TimedGame g = fixture("fig1");
  const Analysis a = analyze(g, Mode::Exact);
  for (const char* q : {"origin", "corner"})
    if (!a.wins(region_of(g, query(g, q).state))) return std::string(q) + " not winning";
  return {};
}

std::string fig1_limit() {
  const TimedGame g = fixture("fig1");
  const Analysis a = analyze(g, Mode::LimitRobust);
  if (!a.wins(region_of(g, query(g, "origin").state))) return "origin not winning";
  if (a.wins(region_of(g, query(g, "corner").state))) return "corner winning";
  return {};
}

std::string fig1_bounded() {
  const TimedGame g = fixture("fig1");
  const ConcreteState origin = query(g, "origin").state;
  for (const char* eps : {"1/10", "1/4", "1/2"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const BoundedResult r = solve_bounded_robust(g, {parse_rational(eps), 0}, {origin});
    if (r.wins(origin)) return std::string("origin winning at eps=") + eps;
    if (std::chrono::steady_clock::now() - t0 > std::chrono::minutes(2)) return std::string("eps=") + eps + " too slow";
  }
  return {};
}

std::string lemma_region() {
  const TimedGame g = fixture("example_one_lemma");
  const Analysis a = analyze(g, Mode::Exact);
  const int l0 = g.find_location("l0"), x = g.find_clock("x");
  std::set<Region> expect, got;
  const ClockSpace cs = clock_space(g);
  for (const auto& r : enumerate_regions(g))
    if (static_cast<int>(r.loc) == l0 && representative(cs, r)[x] < 4) expect.insert(r);
  for (const auto& r : a.winning_regions())
    if (static_cast<int>(r.loc) == l0) got.insert(r);
  if (expect != got) {
    std::ostringstream os;
    os << "expected " << expect.size() << " regions, got " << got.size();
    return os.str();
  }
  return {};
}

std::string open_counterex() {
  const TimedGame g = fixture("open_counterex");
  const int l0 = g.find_location("l0"), l1 = g.find_location("l1");
  auto at_front = [&](const Analysis& a) {
    std::size_t n = 0;
    for (const auto& r : a.winning_regions())
      if (static_cast<int>(r.loc) == l0 || static_cast<int>(r.loc) == l1) ++n;
    return n;
  };
  const std::size_t exact = at_front(analyze(g, Mode::Exact));
  const std::size_t robust = at_front(analyze(g, Mode::LimitRobust));
  if (exact == 0) return "exact winning set empty at l0/l1";
  if (robust != 0) return std::to_string(robust) + " limit-robust regions at l0/l1";
  return {};
}

std::string cross_construction() {
  std::vector<TimedGame> games;
  for (const char* f : kFixtures) games.push_back(fixture(f));
  for (std::uint64_t s = 1; s <= 100; ++s) {
    RandomGameSpec spec;
    spec.seed = s;
    games.push_back(random_timed_game(spec));
  }
  for (const auto& g : games)
    for (Mode m : {Mode::Exact, Mode::LimitRobust}) {
      const auto rep = cross_check(g, m);
      if (!rep.ok) return g.name + ": " + rep.detail;
    }
  return {};
}

std::string solver_oracle() {
  for (std::uint64_t s = 1; s <= 500; ++s) {
    const FiniteParityGame pg = random_parity_game(s, 8, 3);
    const auto b = brute_force_parity(pg);
    if (solve_zielonka(pg).winner != b.winner) return "zielonka mismatch at seed " + std::to_string(s);
    if (solve_spm(pg).winner != b.winner) return "spm mismatch at seed " + std::to_string(s);
  }
  return {};
}

std::string sampling() {
  for (const char* f : kFixtures) {
    const auto rep = sample_region_semantics(fixture(f), 1000, 1);
    if (rep.divergences) return std::string(f) + ": " + (rep.messages.empty() ? "divergence" : rep.messages.front());
  }
  return {};
}

// Grid of valuations with denominator 8 over [0, 3]^2.
std::vector<Valuation> grid() {
  std::vector<Valuation> out;
  for (int a = 0; a <= 24; ++a)
    for (int b = 0; b <= 24; b += 3) {
      Valuation v{Rational(a, 8), Rational(b, 8)};
      for (auto& q : v) q.canonicalize();  // gmp comparisons expect canonical form
      out.push_back(std::move(v));
    }
  return out;
}

std::string erosion() {
  const std::vector<std::string> corpus = {
      "x<=1", "x<1", "x>=1", "x>1 && y<2", "x==1", "x<=2 && y>=1", "x<=1 || (x>=1 && x<=2)",
      "(x<1 && y<1) || (x>=1 && y<=2)", "!(x>1 && x<2)", "x<=1 || y<=1", "true", "x>2 || y<1",
  };
  auto lookup = [](std::string_view n) { return n == "x" ? 0 : n == "y" ? 1 : -1; };
  TimedGame host;
  host.clocks = {{"x", 3}, {"y", 3}};
  host.locations = {{"l0", Constraint(), 0}};
  host.finalize();
  const std::vector<Rational> eps = {0, Rational(1, 4), Rational(1, 2), 1};
  const auto pts = grid();
  for (const auto& text : corpus) {
    const Constraint c = parse_constraint(text, lookup);
    std::vector<Zones> e;
    for (const auto& d : eps) e.push_back(erode(c, 2, d));
    for (const auto& v : pts) {
      for (std::size_t i = 0; i < eps.size(); ++i) {
        const bool in = zones_contain(e[i], v);
        if (in != holds_throughout(host, c, v, eps[i])) return text + ": erosion mismatch";
        if (i == 0 && in != eval_constraint(c, v)) return text + ": eps=0 is not the identity";
        if (i > 0 && in && !zones_contain(e[i - 1], v)) return text + ": not monotone";
      }
    }
  }
  // The erosion of a union is larger than the union of erosions.
  const Constraint u = parse_constraint("x<=1 || (x>=1 && x<=2)", lookup);
  const Valuation v = {Rational(3, 4), Rational(0)};
  const Rational half(1, 2);
  if (!zones_contain(erode(u, 2, half), v)) return "union example: point missing";
  if (zones_contain(erode(parse_constraint("x<=1", lookup), 2, half), v) ||
      zones_contain(erode(parse_constraint("x>=1 && x<=2", lookup), 2, half), v))
    return "union example: erosion distributes";
  return {};
}

std::string containment() {
  std::vector<TimedGame> games;
  for (const char* f : kFixtures) games.push_back(fixture(f));
  for (auto& g : well_formed_games(50, 1000)) games.push_back(std::move(g));
  const JitterParams p{Rational(1, 2), 0};
  for (const auto& g : games) {
    const Analysis exact = analyze(g, Mode::Exact);
    const Analysis limit = analyze(g, Mode::LimitRobust);
    for (const auto& r : limit.winning_regions())
      if (!exact.wins(r)) return g.name + ": limit-robust region outside exact set: " + to_string(g, r);
    const BoundedResult b = solve_bounded_robust(g, p, {});
    for (const auto& r : b.touched_regions(g))
      if (!limit.wins(r)) return g.name + ": bounded region outside limit-robust set: " + to_string(g, r);
  }
  const TimedGame g = fixture("fig1");
  const auto origin = query(g, "origin").state, corner = query(g, "corner").state;
  if (solve_bounded_robust(g, p, {origin}).wins(origin) || !analyze(g, Mode::LimitRobust).wins(region_of(g, origin)))
    return "no strict witness between bounded and limit-robust";
  if (analyze(g, Mode::LimitRobust).wins(region_of(g, corner)) || !analyze(g, Mode::Exact).wins(region_of(g, corner)))
    return "no strict witness between limit-robust and exact";
  return {};
}

std::string size_bounds() {
  std::vector<TimedGame> games;
  for (const char* f : kFixtures) games.push_back(fixture(f));
  for (std::uint64_t s = 1; s <= 100; ++s) {
    RandomGameSpec spec;
    spec.seed = s;
    games.push_back(random_timed_game(spec));
  }
  games.push_back(build_jitter_game(fixture("fig1"), {Rational(1, 2), 0}).game);
  for (const auto& g : games) {
    const std::size_t regions = enumerate_regions(g).size();
    for (Mode m : {Mode::Exact, Mode::LimitRobust}) {
      const ExtGraph graph = build_ext_region_graph(g, m, default_seeds(g));
      const FiniteParityGame star = build_af_star(graph);
      if (star.size() > 8 * graph.size()) return g.name + ": (A^f)* larger than 8 |ExtRegions|";
      const std::size_t cap = 32 * static_cast<std::size_t>(g.clock_count() + 1) * g.order() * regions;
      if (graph.size() > cap) return g.name + ": ExtRegion count above bound";
    }
  }
  return {};
}

}  // namespace

int main() {
  const Criterion all[] = {
      {1, "fig1 exact", 10, fig1_exact},
      {2, "fig1 limit-robust", 30, fig1_limit},
      {3, "fig1 bounded-robust", 360, fig1_bounded},
      {4, "lemma region x<4", 10, lemma_region},
      {5, "open counterexample", 30, open_counterex},
      {6, "A^f vs (A^f)*", 300, cross_construction},
      {7, "solver oracle", 60, solver_oracle},
      {8, "region sampling", 60, sampling},
      {9, "erosion properties", 30, erosion},
      {10, "containment chain", 600, containment},
      {11, "size bounds", 600, size_bounds},
  };
  for (const auto& c : all) run(c);
  return failures == 0 ? 0 : 1;
}
