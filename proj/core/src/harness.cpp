#include "tpg/harness.hpp"

#include "tpg/enlarged.hpp"
#include "tpg/reduction.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tpg {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

Constraint random_atom(Rng& rng, int clocks, const std::vector<int>& ceiling) {
  const int x = uniform(rng, 0, clocks - 1);
  const int k = uniform(rng, 0, ceiling[x]);
  static constexpr Cmp kCmps[] = {Cmp::Le, Cmp::Lt, Cmp::Ge, Cmp::Gt, Cmp::Eq};
  return Constraint::atom(x, kCmps[uniform(rng, 0, 4)], k);
}

Constraint random_guard(Rng& rng, int clocks, const std::vector<int>& ceiling) {
  if (clocks == 0 || coin(rng, 0.2)) return Constraint::truth();
  std::vector<Constraint> parts;
  const int n = uniform(rng, 1, 2);
  for (int i = 0; i < n; ++i) {
    Constraint a = random_atom(rng, clocks, ceiling);
    parts.push_back(coin(rng, 0.15) ? Constraint::negate(a) : a);
  }
  if (parts.size() > 1 && coin(rng, 0.25)) return Constraint::disj(std::move(parts));
  return parts.size() == 1 ? parts.front() : Constraint::conj(std::move(parts));
}

}  // namespace

TimedGame random_timed_game(const RandomGameSpec& spec) {
  Rng rng(spec.seed);
  TimedGame g;
  g.name = "random_" + std::to_string(spec.seed);
  const int nclocks = uniform(rng, 0, spec.max_clocks);
  std::vector<int> ceiling;
  for (int x = 0; x < nclocks; ++x) {
    ceiling.push_back(uniform(rng, 1, spec.max_ceiling));
    g.clocks.push_back(Clock{std::string(1, static_cast<char>('x' + x)), ceiling.back()});
  }
  const int nloc = uniform(rng, 1, spec.max_locations);
  const int order = uniform(rng, 1, spec.max_order);
  for (int l = 0; l < nloc; ++l) {
    Constraint inv = Constraint::truth();
    // upward-closed invariants never block time
    if (l > 0 && nclocks > 0 && coin(rng, 0.25)) {
      const int x = uniform(rng, 0, nclocks - 1);
      inv = Constraint::atom(x, Cmp::Ge, uniform(rng, 0, ceiling[x]));
    }
    g.locations.push_back(Location{"l" + std::to_string(l), inv, uniform(rng, 0, order - 1)});
  }
  for (Player p : {Player::One, Player::Two}) {
    const int nedges = uniform(rng, 0, spec.max_edges_per_player);
    std::set<std::pair<int, int>> used;
    for (int i = 0; i < nedges; ++i) {
      const int src = uniform(rng, 0, nloc - 1);
      const int act = uniform(rng, 0, spec.max_edges_per_player - 1);
      if (!used.insert({src, act}).second) continue;
      Edge e;
      e.source = src;
      e.owner = p;
      e.blame = p;
      e.action = g.add_action((p == Player::One ? "a" : "b") + std::to_string(act), p);
      e.guard = random_guard(rng, nclocks, ceiling);
      e.target = uniform(rng, 0, nloc - 1);
      for (int x = 0; x < nclocks; ++x)
        if (coin(rng, 0.4)) e.resets.push_back(x);
      g.edges.push_back(std::move(e));
    }
  }
  ConcreteState q{0, Valuation(nclocks, Rational(0))};
  g.queries.push_back(QueryState{"start", q});
  g.finalize();
  return g;
}

FiniteParityGame random_parity_game(std::uint64_t seed, int max_states, int max_priority) {
  Rng rng(seed);
  const int n = uniform(rng, 1, max_states);
  ParityGameBuilder b;
  for (int v = 0; v < n; ++v)
    b.add_state(static_cast<std::uint8_t>(uniform(rng, 1, 2)), static_cast<std::uint32_t>(uniform(rng, 0, max_priority - 1)));
  for (int v = 0; v < n; ++v) {
    const int deg = uniform(rng, 1, 3);
    for (int i = 0; i < deg; ++i) b.add_edge(v, uniform(rng, 0, n - 1));
  }
  return b.finish();
}

Solution brute_force_parity(const FiniteParityGame& g) {
  const auto n = static_cast<std::uint32_t>(g.size());
  if (n > 10) throw std::invalid_argument("brute force is limited to 10 states");
  if (!g.total()) throw std::invalid_argument("parity game has a state without successors");
  std::vector<std::uint32_t> p1, p2;
  for (std::uint32_t v = 0; v < n; ++v) (g.owner[v] == 1 ? p1 : p2).push_back(v);

  auto count = [&](const std::vector<std::uint32_t>& states) {
    std::uint64_t c = 1;
    for (auto v : states) c *= g.offset[v + 1] - g.offset[v];
    return c;
  };
  const std::uint64_t n1 = count(p1), n2 = count(p2);
  if (n1 * n2 > 50'000'000ull) throw std::invalid_argument("too many strategy pairs");

  auto decode = [&](const std::vector<std::uint32_t>& states, std::uint64_t code, std::vector<std::uint32_t>& next) {
    for (auto v : states) {
      const std::uint32_t deg = g.offset[v + 1] - g.offset[v];
      next[v] = g.succ[g.offset[v] + code % deg];
      code /= deg;
    }
  };
  // Play from v under a strategy pair: the max priority on the cycle it enters.
  auto winner_from = [&](const std::vector<std::uint32_t>& next, std::uint32_t v) {
    std::vector<int> seen(n, -1);
    std::vector<std::uint32_t> path;
    while (seen[v] < 0) {
      seen[v] = static_cast<int>(path.size());
      path.push_back(v);
      v = next[v];
    }
    std::uint32_t top = 0;
    for (std::size_t i = seen[v]; i < path.size(); ++i) top = std::max(top, g.priority[path[i]]);
    return top % 2 == 0 ? 1 : 2;
  };

  // wins1[c1][v]: player 1 wins from v with strategy c1 against every player-2 strategy
  std::vector<std::uint32_t> next(n);
  std::vector<std::vector<char>> wins1(n1, std::vector<char>(n, 1));
  std::vector<std::vector<char>> wins2(n2, std::vector<char>(n, 1));
  for (std::uint64_t c1 = 0; c1 < n1; ++c1) {
    decode(p1, c1, next);
    for (std::uint64_t c2 = 0; c2 < n2; ++c2) {
      decode(p2, c2, next);
      for (std::uint32_t v = 0; v < n; ++v) {
        const int w = winner_from(next, v);
        if (w == 1) wins2[c2][v] = 0;
        else wins1[c1][v] = 0;
      }
    }
  }
  Solution s;
  s.winner.assign(n, 2);
  s.strategy.assign(n, -1);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint64_t c1 = 0; c1 < n1 && s.winner[v] != 1; ++c1)
      if (wins1[c1][v]) s.winner[v] = 1;
  // positional determinacy: one strategy wins from the whole winning set
  auto uniform_strategy = [&](const std::vector<std::vector<char>>& wins, std::uint8_t who,
                              const std::vector<std::uint32_t>& own) {
    for (std::uint64_t c = 0; c < wins.size(); ++c) {
      bool all = true;
      for (std::uint32_t v = 0; v < n && all; ++v)
        if (s.winner[v] == who && !wins[c][v]) all = false;
      if (!all) continue;
      decode(own, c, next);
      for (auto v : own)
        if (s.winner[v] == who) s.strategy[v] = next[v];
      return;
    }
    throw std::logic_error("no uniform memoryless strategy found");
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    bool some2 = false;
    for (std::uint64_t c2 = 0; c2 < n2 && !some2; ++c2) some2 = wins2[c2][v];
    if ((s.winner[v] == 1) == some2) throw std::logic_error("brute force found an undetermined state");
  }
  uniform_strategy(wins1, 1, p1);
  uniform_strategy(wins2, 2, p2);
  return s;
}

// ---------------------------------------------------------------- sampling

namespace {

Rational random_fraction(Rng& rng) {
  const int den = uniform(rng, 2, 24);
  Rational q(uniform(rng, 1, den - 1), den);
  q.canonicalize();
  return q;
}

// Random member of a region of the game clocks.
Valuation sample_in(Rng& rng, const ClockSpace& cs, const Region& r) {
  std::set<Rational> picks;
  while (static_cast<int>(picks.size()) < r.ncells) {
    Rational f = random_fraction(rng);
    f.canonicalize();
    picks.insert(f);
  }
  std::vector<Rational> cells(picks.begin(), picks.end());
  Valuation v(r.nclocks);
  for (int x = 0; x < r.nclocks; ++x) {
    if (r.cell[x] < 0) {
      v[x] = Rational(cs.ceiling[x]) + random_fraction(rng) * 2;
    } else {
      v[x] = Rational(r.h[x]) + (r.cell[x] == 0 ? Rational(0) : cells[r.cell[x] - 1]);
    }
    v[x].canonicalize();
  }
  return v;
}

struct Piece {
  Region region;
  Rational lo, hi;  // hi < 0: unbounded
  bool point = false;
};

// Regions met by elapsing time from v, with the delay interval spent in each.
std::vector<Piece> time_pieces(const ClockSpace& cs, int loc, const Valuation& v, std::size_t limit) {
  std::vector<Rational> bps;
  for (int x = 0; x < cs.size(); ++x)
    for (Rational n = floor_of(v[x]) + 1; n <= cs.ceiling[x] + 1; n += 1) bps.push_back(n - v[x]);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<Piece> out;
  auto push = [&](Piece p) {
    if (!out.empty() && out.back().region == p.region) {
      out.back().hi = p.hi;
      out.back().point = false;
      return;
    }
    out.push_back(std::move(p));
  };
  Rational prev = 0;
  push(Piece{region_of(cs, loc, v), 0, 0, true});
  for (const auto& b : bps) {
    push(Piece{region_of(cs, loc, elapse(v, (prev + b) / 2)), prev, b, false});
    push(Piece{region_of(cs, loc, elapse(v, b)), b, b, true});
    prev = b;
    if (out.size() > limit) break;
  }
  if (out.size() <= limit) push(Piece{region_of(cs, loc, elapse(v, prev + 1)), prev, Rational(-1), false});
  if (out.size() > limit) out.resize(limit);
  return out;
}

Rational delay_in(Rng& rng, const Piece& p) {
  if (p.point) return p.lo;
  if (p.hi < 0) return p.lo + random_fraction(rng) * 2;
  Rational d = p.lo + (p.hi - p.lo) * random_fraction(rng);
  d.canonicalize();
  return d;
}

bool has_integral_clock(const Region& r) {
  for (int x = 0; x < r.nclocks; ++x)
    if (r.cell[x] == 0) return true;
  return false;
}

}  // namespace

SamplingReport sample_region_semantics(const TimedGame& g, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  const ClockSpace cs = clock_space(g);
  const auto regions = enumerate_regions(g);
  std::vector<Region> points;
  for (const auto& r : regions)
    if (has_integral_clock(r) || r.nclocks == 0) points.push_back(r);
  SamplingReport rep;
  auto diverge = [&](const std::string& msg) {
    ++rep.divergences;
    if (rep.messages.size() < 8) rep.messages.push_back(msg);
  };

  for (std::size_t t = 0; t < trials; ++t) {
    // every fourth trial starts in a region with an integral clock
    const Region& start = (t % 4 == 0 && !points.empty()) ? points[uniform(rng, 0, static_cast<int>(points.size()) - 1)]
                                                          : regions[uniform(rng, 0, static_cast<int>(regions.size()) - 1)];
    ConcreteState s{static_cast<int>(start.loc), sample_in(rng, cs, start)};
    if (!(region_of(cs, s.location, s.valuation) == start)) {
      diverge("sampled state " + to_string(g, s) + " is not in " + to_string(g, start));
      continue;
    }
    ++rep.trials;
    if (has_integral_clock(start)) ++rep.point_states;

    // symbolic chain r_0..r_2 inside the invariant
    const Constraint& inv = g.locations[s.location].invariant;
    std::vector<Region> chain{start};
    while (chain.size() < 3) {
      TimeStep st = time_successor(cs, chain.back());
      if (st.absorbing || !region_satisfies(cs, st.region, inv)) break;
      chain.push_back(st.region);
    }
    auto pieces = time_pieces(cs, s.location, s.valuation, chain.size());
    bool bad_chain = pieces.size() != chain.size();
    for (std::size_t j = 0; j < pieces.size() && !bad_chain; ++j) bad_chain = !(pieces[j].region == chain[j]);
    if (bad_chain) {
      diverge("time successors disagree with elapsing from " + to_string(g, s));
      continue;
    }

    struct Pick {
      Move move;
      int j = 0;
      Region target;
    };
    auto pick = [&](Player p) -> std::optional<Pick> {
      Pick out;
      out.j = uniform(rng, 0, static_cast<int>(chain.size()) - 1);
      out.move.delay = delay_in(rng, pieces[out.j]);
      const Region& at = chain[out.j];
      const ConcreteState later{s.location, elapse(s.valuation, out.move.delay)};
      if (!(region_of(cs, later.location, later.valuation) == at)) {
        diverge("delay " + to_string(out.move.delay) + " from " + to_string(g, s) + " leaves region " + std::to_string(out.j));
        return std::nullopt;
      }
      // region-level and concrete enabledness must agree edge by edge
      std::vector<int> enabled;
      for (int e : g.edges_from(s.location)) {
        const Edge& edge = g.edges[e];
        if (edge.owner != p) continue;
        Region after = reset_region(at, edge.resets);
        after.loc = static_cast<std::uint32_t>(edge.target);
        const bool sym = region_satisfies(cs, at, edge.guard) &&
                         region_satisfies(cs, after, g.locations[edge.target].invariant);
        const bool con = move_enabled(g, s, p, Move::act(out.move.delay, edge.action));
        if (sym != con) {
          diverge("action " + g.action_names[edge.action] + " after " + to_string(out.move.delay) + " from " +
                  to_string(g, s) + ": region says " + (sym ? "enabled" : "disabled"));
          return std::nullopt;
        }
        if (con) enabled.push_back(e);
      }
      if (p == Player::One && g.relinquish && coin(rng, 0.1)) {
        out.move = Move::relinquish(out.move.delay);
        out.target = at;
        return out;
      }
      if (enabled.empty() || coin(rng, 0.3)) {
        out.move.kind = MoveKind::Delay;
        out.target = at;
        return out;
      }
      const Edge& edge = g.edges[enabled[uniform(rng, 0, static_cast<int>(enabled.size()) - 1)]];
      out.move = Move::act(out.move.delay, edge.action);
      out.target = reset_region(at, edge.resets);
      out.target.loc = static_cast<std::uint32_t>(edge.target);
      return out;
    };
    auto m1 = pick(Player::One);
    if (!m1) continue;
    auto m2 = pick(Player::Two);
    if (!m2) continue;

    std::vector<Region> predicted;
    const bool star = m1->move.kind == MoveKind::Relinquish;
    if (star) {
      ++rep.relinquished;
      predicted.push_back(m2->target);
    } else if (m1->j < m2->j) {
      predicted.push_back(m1->target);
    } else if (m2->j < m1->j) {
      predicted.push_back(m2->target);
    } else if (has_integral_clock(chain[m1->j]) || m1->move.delay == m2->move.delay) {
      // a region with an integral clock is crossed in an instant: the delays tie
      predicted = {m1->target, m2->target};
    } else {
      predicted.push_back(m1->move.delay < m2->move.delay ? m1->target : m2->target);
    }
    if (!star && m1->move.delay == m2->move.delay) ++rep.ties;
    if (!star && m1->j == m2->j && has_integral_clock(chain[m1->j]) && m1->move.delay != m2->move.delay)
      diverge("unequal delays inside a point region from " + to_string(g, s));

    std::vector<Region> actual;
    for (const auto& o : joint_destination(g, s, m1->move, m2->move))
      actual.push_back(region_of(cs, o.state.location, o.state.valuation));
    auto norm = [](std::vector<Region>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    norm(predicted);
    norm(actual);
    if (predicted != actual) {
      std::ostringstream os;
      os << "joint move from " << to_string(g, s) << " (j1=" << m1->j << " d1=" << to_string(m1->move.delay)
         << (star ? " relinquish" : "") << ", j2=" << m2->j << " d2=" << to_string(m2->move.delay) << ") landed in";
      for (const auto& r : actual) os << " [" << to_string(g, r) << "]";
      os << ", predicted";
      for (const auto& r : predicted) os << " [" << to_string(g, r) << "]";
      diverge(os.str());
    }
  }
  return rep;
}

// ------------------------------------------------------------- cross check

CrossCheckReport cross_check(const TimedGame& g, Mode mode, std::size_t spm_limit) {
  return cross_check(g, mode, default_seeds(g), spm_limit);
}

CrossCheckReport cross_check(const TimedGame& g, Mode mode, const std::vector<Region>& seeds, std::size_t spm_limit) {
  CrossCheckReport rep;
  const ExtGraph graph = build_ext_region_graph(g, mode, seeds);
  rep.regions = graph.size();
  const FiniteParityGame af = build_af(graph);
  const FiniteParityGame star = build_af_star(graph);
  rep.af_states = af.size();
  rep.af_star_states = star.size();
  struct Run {
    const char* name;
    std::vector<std::uint8_t> win;
  };
  std::vector<Run> runs;
  runs.push_back({"A^f/zielonka", regstates(af, solve_zielonka(af).win1_flags(), graph.size())});
  runs.push_back({"(A^f)*/zielonka", regstates(star, solve_zielonka(star).win1_flags(), graph.size())});
  rep.spm_used = af.size() <= spm_limit;
  if (rep.spm_used) {
    runs.push_back({"A^f/spm", regstates(af, solve_spm(af).win1_flags(), graph.size())});
    runs.push_back({"(A^f)*/spm", regstates(star, solve_spm(star).win1_flags(), graph.size())});
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    for (std::uint32_t r = 0; r < graph.size(); ++r) {
      if (runs[i].win[r] == runs[0].win[r]) continue;
      rep.ok = false;
      rep.detail = std::string(runs[0].name) + " and " + runs[i].name + " disagree on " + graph.label(r);
      return rep;
    }
  }
  return rep;
}

// -------------------------------------------------------------- shrinking

TimedGame remove_location(const TimedGame& g, int loc) {
  TimedGame out = g;
  out.locations.erase(out.locations.begin() + loc);
  auto remap = [loc](int l) { return l > loc ? l - 1 : l; };
  out.edges.clear();
  for (const auto& e : g.edges) {
    if (e.source == loc || e.target == loc) continue;
    Edge c = e;
    c.source = remap(e.source);
    c.target = remap(e.target);
    out.edges.push_back(std::move(c));
  }
  out.queries.clear();
  for (const auto& q : g.queries) {
    if (q.state.location == loc) continue;
    QueryState c = q;
    c.state.location = remap(q.state.location);
    out.queries.push_back(std::move(c));
  }
  out.finalize();
  return out;
}

TimedGame shrink_game(const TimedGame& g, const std::function<bool(const TimedGame&)>& fails) {
  TimedGame cur = g;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < cur.edges.size(); ++i) {
      TimedGame trial = cur;
      trial.edges.erase(trial.edges.begin() + static_cast<std::ptrdiff_t>(i));
      trial.finalize();
      if (fails(trial)) {
        cur = std::move(trial);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (int l = 0; l < static_cast<int>(cur.locations.size()) && cur.locations.size() > 1; ++l) {
      TimedGame trial = remove_location(cur, l);
      if (fails(trial)) {
        cur = std::move(trial);
        progress = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace tpg
