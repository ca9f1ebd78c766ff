#include "tpg/robust.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tpg {

Zones erode(const Constraint& c, int clocks, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("erosion width must be nonnegative");
  const Zones bad = complement(zones_of(c, clocks), clocks);
  Zones reach_bad;
  for (const auto& d : bad) reach_bad.push_back(d.down(eps));
  return complement(reach_bad, clocks);
}

Constraint erode_guard(const Constraint& c, int clocks, const Rational& eps) {
  if (eps == 0) return c;
  return zones_to_constraint(erode(c, clocks, eps));
}

namespace {

std::string fresh_name(std::string base, const std::function<bool(const std::string&)>& taken) {
  while (taken(base)) base += '_';
  return base;
}

std::int64_t lcm_den(const JitterParams& p) {
  const long a = p.jitter.get_den().get_si(), b = p.response.get_den().get_si();
  return std::lcm<std::int64_t>(a, b);
}

}  // namespace

JitterGame build_jitter_game(const TimedGame& g, const JitterParams& p, bool blame_overrides) {
  if (p.jitter < 0 || p.response < 0) throw std::invalid_argument("jitter and response must be nonnegative");
  JitterGame j;
  j.scale = lcm_den(p);
  const std::int64_t k = j.scale;
  const Rational jit = p.jitter * Rational(static_cast<long>(k));
  const Rational res = p.response * Rational(static_cast<long>(k));
  const std::int64_t jit_i = to_int64(jit), res_i = to_int64(res);
  const bool copies = jit_i > 0;
  const bool swap_blame = blame_overrides && res_i == 0;

  TimedGame& out = j.game;
  out.name = g.name;
  out.relinquish = g.relinquish;
  out.clocks = g.clocks;
  for (auto& c : out.clocks) c.ceiling = static_cast<int>(c.ceiling * k);
  j.z = static_cast<int>(out.clocks.size());
  out.clocks.push_back(Clock{fresh_name("z", [&](const std::string& n) { return g.find_clock(n) >= 0; }),
                             static_cast<int>(std::max<std::int64_t>({1, jit_i, res_i}))});
  const int nclocks = static_cast<int>(g.clocks.size());

  for (std::size_t l = 0; l < g.locations.size(); ++l) {
    const auto& src = g.locations[l];
    out.locations.push_back(Location{src.name, scale(src.invariant, k), src.parity});
    j.origin.push_back(static_cast<int>(l));
    j.via_edge.push_back(-1);
  }
  j.base_locations = static_cast<int>(g.locations.size());
  out.action_names = g.action_names;
  out.action_owner = g.action_owner;

  auto with_z = [&](std::vector<int> r) {
    r.push_back(j.z);
    return r;
  };
  const Constraint z_ready = res_i > 0 ? Constraint::atom(j.z, Cmp::Ge, res_i) : Constraint::truth();

  for (const auto& e : g.edges) {
    if (e.owner != Player::Two) continue;
    Edge c = e;
    c.guard = scale(e.guard, k);
    c.resets = with_z(e.resets);
    out.edges.push_back(std::move(c));
  }
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const Edge& e = g.edges[ei];
    if (e.owner != Player::One) continue;
    const Constraint guard = scale(e.guard, k);
    if (!copies) {
      Edge c = e;
      c.guard = Constraint::conj(guard, z_ready);
      c.resets = with_z(e.resets);
      out.edges.push_back(std::move(c));
      continue;
    }
    const std::string& lname = g.locations[e.source].name;
    const std::string copy_name = fresh_name(lname + "__" + g.action_names[e.action], [&](const std::string& n) {
      return std::any_of(out.locations.begin(), out.locations.end(), [&](const Location& l) { return l.name == n; });
    });
    const int copy = static_cast<int>(out.locations.size());
    out.locations.push_back(
        Location{copy_name, Constraint::atom(j.z, Cmp::Le, jit_i), g.locations[e.source].parity});
    j.origin.push_back(e.source);
    j.via_edge.push_back(static_cast<int>(ei));

    // player 1 announces e; it must stay enabled for the whole jitter window
    Edge intent;
    intent.source = e.source;
    intent.owner = Player::One;
    intent.action = e.action;
    intent.guard = Constraint::conj(std::vector<Constraint>{
        erode_guard(scale(g.locations[e.source].invariant, k), nclocks, jit), z_ready, erode_guard(guard, nclocks, jit)});
    intent.target = copy;
    intent.resets = {j.z};
    intent.blame = swap_blame ? Player::Two : Player::One;
    out.edges.push_back(std::move(intent));

    for (int e2 : g.edges_from(e.source)) {
      const Edge& other = g.edges[e2];
      if (other.owner != Player::Two) continue;
      Edge c = other;
      c.source = copy;
      c.guard = scale(other.guard, k);
      c.resets = with_z(other.resets);
      out.edges.push_back(std::move(c));
    }

    const std::string fire = fresh_name("fire_" + g.action_names[e.action], [&](const std::string& n) {
      return std::find(out.action_names.begin(), out.action_names.end(), n) != out.action_names.end();
    });
    Edge land;
    land.source = copy;
    land.owner = Player::Two;
    land.action = out.add_action(fire, Player::Two);
    land.guard = guard;
    land.target = e.target;
    land.resets = with_z(e.resets);
    land.blame = swap_blame ? Player::One : Player::Two;
    out.edges.push_back(std::move(land));
  }

  for (const auto& q : g.queries) {
    QueryState lifted{q.label, lift_state(j, q.state)};
    out.queries.push_back(std::move(lifted));
  }
  out.finalize();
  return j;
}

JitterCounts jitter_counts(const JitterGame& j) {
  JitterCounts c;
  c.locations = j.game.locations.size();
  for (const auto& e : j.game.edges) (e.owner == Player::One ? c.p1_edges : c.p2_edges)++;
  return c;
}

JitterCounts jitter_bounds(const TimedGame& original) {
  std::size_t a1 = 0, a2 = 0;
  for (const auto& e : original.edges) (e.owner == Player::One ? a1 : a2)++;
  return JitterCounts{original.locations.size() * (1 + a1), a1, a1 + a2 + a1 * a2};
}

Analysis solve_limit_robust(const TimedGame& g, const std::vector<Region>& seeds) {
  return analyze(g, Mode::LimitRobust, seeds);
}

Analysis solve_limit_robust(const TimedGame& g) { return analyze(g, Mode::LimitRobust); }

ConcreteState lift_state(const JitterGame& j, const ConcreteState& s) {
  if (s.location < 0 || s.location >= j.base_locations) throw std::invalid_argument("state location is not part of the game");
  if (static_cast<int>(s.valuation.size()) != j.z) throw std::invalid_argument("state does not value every clock");
  ConcreteState out;
  out.location = s.location;
  for (const auto& v : s.valuation) {
    if (v < 0) throw std::invalid_argument("negative clock value");
    out.valuation.push_back(v * Rational(static_cast<long>(j.scale)));
  }
  out.valuation.emplace_back(0);
  return out;
}

Region lift_region(const JitterGame& j, const ConcreteState& s) { return region_of(j.game, lift_state(j, s)); }

bool BoundedResult::wins(const ConcreteState& s) const { return analysis.wins(lift_region(jitter, s)); }

std::vector<Region> BoundedResult::touched_regions(const TimedGame& original) const {
  const ClockSpace js = clock_space(jitter.game);
  const ClockSpace os = clock_space(original);
  std::vector<Region> out;
  for (const auto& s : analysis.seeds) {
    if (static_cast<int>(s.loc) >= jitter.base_locations || !s.integral(jitter.z) || s.h[jitter.z] != 0) continue;
    if (!analysis.wins(s)) continue;
    Valuation v = representative(js, s);
    v.pop_back();
    for (auto& x : v) x /= Rational(static_cast<long>(jitter.scale));
    out.push_back(region_of(os, static_cast<int>(s.loc), v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundedResult solve_bounded_robust(const TimedGame& g, const JitterParams& p, const std::vector<ConcreteState>& seeds,
                                   bool blame_overrides) {
  BoundedResult r;
  r.jitter = build_jitter_game(g, p, blame_overrides);
  std::vector<Region> start;
  if (seeds.empty()) {
    for (const auto& reg : enumerate_regions(r.jitter.game))
      if (static_cast<int>(reg.loc) < r.jitter.base_locations && reg.integral(r.jitter.z) && reg.h[r.jitter.z] == 0)
        start.push_back(reg);
  } else {
    for (const auto& s : seeds) start.push_back(lift_region(r.jitter, s));
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
  }
  r.analysis = analyze(r.jitter.game, Mode::Exact, start);
  return r;
}

}  // namespace tpg
