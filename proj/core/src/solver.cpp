#include "tpg/solver.hpp"

#include "tpg/reduction.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tpg {

std::vector<std::uint8_t> Solution::win1_flags() const {
  std::vector<std::uint8_t> out(winner.size());
  for (std::size_t v = 0; v < winner.size(); ++v) out[v] = winner[v] == 1;
  return out;
}

namespace {

// Strongly connected components of the graph restricted to `active`;
// returns a component id per state (UINT32_MAX when inactive).
std::vector<std::uint32_t> components(const std::vector<std::vector<std::uint32_t>>& adj,
                                      const std::vector<char>& active) {
  const auto n = static_cast<std::uint32_t>(adj.size());
  std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0), comp(n, UINT32_MAX);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> frames;
  std::uint32_t counter = 0, ncomp = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (!active[root] || index[root] != UINT32_MAX) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, i] = frames.back();
      if (i < adj[v].size()) {
        const auto w = adj[v][i++];
        if (!active[w]) continue;
        if (index[w] == UINT32_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
    }
  }
  return comp;
}

std::string check_player(const FiniteParityGame& g, const Solution& s, std::uint8_t who) {
  const auto n = static_cast<std::uint32_t>(g.size());
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::vector<char> in_win(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) in_win[v] = s.winner[v] == who;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!in_win[v]) continue;
    if (g.owner[v] == who) {
      const auto t = s.strategy[v];
      if (t < 0 || static_cast<std::size_t>(t) >= n)
        return "player " + std::to_string(who) + " has no strategy at state " + std::to_string(v);
      if (std::find(g.succ_begin(v), g.succ_end(v), static_cast<std::uint32_t>(t)) == g.succ_end(v))
        return "strategy at state " + std::to_string(v) + " is not an edge";
      if (!in_win[t]) return "strategy at state " + std::to_string(v) + " leaves the winning set";
      adj[v].push_back(static_cast<std::uint32_t>(t));
    } else {
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) {
        if (!in_win[*it])
          return "opponent escapes the winning set of player " + std::to_string(who) + " at state " + std::to_string(v);
        adj[v].push_back(*it);
      }
    }
  }
  const std::uint32_t bad_parity = who == 1 ? 1 : 0;
  std::set<std::uint32_t> bad;
  for (std::uint32_t v = 0; v < n; ++v)
    if (in_win[v] && g.priority[v] % 2 == bad_parity) bad.insert(g.priority[v]);
  for (auto p : bad) {
    std::vector<char> active(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) active[v] = in_win[v] && g.priority[v] <= p;
    auto comp = components(adj, active);
    std::vector<std::uint32_t> size(n, 0);
    for (std::uint32_t v = 0; v < n; ++v)
      if (comp[v] != UINT32_MAX) ++size[comp[v]];
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!active[v] || g.priority[v] != p) continue;
      bool cyclic = size[comp[v]] > 1 || std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
      if (cyclic)
        return "player " + std::to_string(who) + " strategy admits a cycle with max priority " + std::to_string(p) +
               " through state " + std::to_string(v);
    }
  }
  return {};
}

}  // namespace

std::string check_solution(const FiniteParityGame& g, const Solution& s) {
  if (s.winner.size() != g.size() || s.strategy.size() != g.size()) return "solution size does not match the game";
  for (std::size_t v = 0; v < g.size(); ++v)
    if (s.winner[v] != 1 && s.winner[v] != 2) return "state " + std::to_string(v) + " has no winner";
  auto r = check_player(g, s, 1);
  if (!r.empty()) return r;
  return check_player(g, s, 2);
}

RegionStrategy extract_region_strategy(const Solution& sol, const FiniteParityGame& game, const ExtGraph& graph) {
  RegionStrategy out;
  out.choice.assign(graph.size(), std::nullopt);
  const auto entry = entry_states(game, graph.size());
  for (std::uint32_t r = 0; r < graph.size(); ++r) {
    const auto e = entry[r];
    if (e == UINT32_MAX) throw std::invalid_argument("game lacks stage tags for region " + std::to_string(r));
    if (sol.winner[e] != 1) continue;
    const auto s = sol.strategy[e];
    if (s < 0) throw std::logic_error("winning entry state without a strategy");
    const auto& tag = game.tag[s];
    if (tag.stage == Stage::Relinquished) {
      out.choice[r] = RegionChoice{true, 0, kPureDelay};
      continue;
    }
    if (tag.stage != Stage::Block) throw std::invalid_argument("entry strategy does not lead to a stage-2 state");
    std::int64_t commit = -1;
    for (auto it = game.succ_begin(s); it != game.succ_end(s); ++it)
      if (game.tag[*it].stage == Stage::Commit) commit = *it;
    if (commit < 0 || sol.strategy[commit] < 0) throw std::logic_error("commit state without a strategy");
    const auto landed = game.tag[sol.strategy[commit]].region;
    RegionChoice c{false, tag.j, kPureDelay};
    bool found = false;
    for (const auto& m : graph.moves_of(r)) {
      if (m.owner == Player::One && m.j == tag.j && m.target == landed) {
        c.action = m.action;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("commit choice matches no move");
    out.choice[r] = c;
  }
  return out;
}

std::vector<Region> default_seeds(const TimedGame& g) {
  auto seeds = enumerate_regions(g);
  for (const auto& q : g.queries) seeds.push_back(region_of(g, q.state));
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

Analysis analyze(const TimedGame& g, Mode mode, const std::vector<Region>& seeds, const SolveOptions& opts) {
  Analysis a;
  a.seeds = seeds;
  a.graph = build_ext_region_graph(g, mode, seeds);
  a.arena = build_af_star(a.graph);
  a.solution = solve_zielonka(a.arena);
  if (opts.verify_with_spm && a.arena.size() <= opts.spm_limit) {
    const Solution other = solve_spm(a.arena);
    if (other.winner != a.solution.winner) throw std::logic_error("parity solvers disagree");
  }
  a.region_win = regstates(a.arena, a.solution.win1_flags(), a.graph.size());
  a.strategy = extract_region_strategy(a.solution, a.arena, a.graph);
  return a;
}

Analysis analyze(const TimedGame& g, Mode mode, const SolveOptions& opts) {
  return analyze(g, mode, default_seeds(g), opts);
}

bool Analysis::wins(const Region& base) const {
  const auto n = graph.find(seed_region(base));
  if (n < 0) throw std::invalid_argument("region is not part of the analysed graph");
  return region_win[n] != 0;
}

std::vector<Region> Analysis::winning_regions() const {
  std::vector<Region> out;
  for (const auto& s : seeds)
    if (wins(s)) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<RegionChoice> Analysis::choice_at(const Region& base) const {
  const auto n = graph.find(seed_region(base));
  if (n < 0) return std::nullopt;
  return strategy.choice[n];
}

TimedGame swap_roles(const TimedGame& g) {
  TimedGame s = g;
  for (auto& o : s.action_owner) o = opponent(o);
  for (auto& e : s.edges) {
    e.owner = opponent(e.owner);
    e.blame = opponent(e.blame);
  }
  for (auto& l : s.locations) l.parity = 0;
  s.relinquish = false;
  s.finalize();
  return s;
}

namespace {

bool receptive_for_one(const TimedGame& g, const std::vector<Region>& check) {
  TimedGame flat = g;
  for (auto& l : flat.locations) l.parity = 0;
  flat.finalize();
  auto seeds = default_seeds(flat);
  const Analysis a = analyze(flat, Mode::Exact, seeds);
  for (const auto& r : check)
    if (!a.wins(r)) return false;
  return true;
}

}  // namespace

Receptiveness check_receptive(const TimedGame& g) {
  std::vector<Region> check;
  if (!g.queries.empty()) {
    for (const auto& q : g.queries) check.push_back(region_of(g, q.state));
  } else {
    check = enumerate_regions(g);
  }
  Receptiveness r;
  r.player1 = receptive_for_one(g, check);
  r.player2 = receptive_for_one(swap_roles(g), check);
  return r;
}

}  // namespace tpg
