#include "tpg/enlarged.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tpg {

std::size_t ExtRegionHash::operator()(const ExtRegion& r) const noexcept {
  std::size_t h = RegionHash{}(r.base);
  h ^= (static_cast<std::size_t>(r.tick) | static_cast<std::size_t>(r.tbl1) << 1 | static_cast<std::size_t>(r.rb1) << 2 |
        static_cast<std::size_t>(r.p) << 3) +
       0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

int ext_parity(const ExtRegion& r, Mode mode) {
  if (mode == Mode::LimitRobust && !r.rb1) return 1;
  if (r.tick) return r.p + 2;
  return r.tbl1 ? 1 : 0;
}

ExtRegion seed_region(const Region& base) {
  ExtRegion r;
  r.base = extend_zero(base);
  return r;
}

MoveGenerator::MoveGenerator(const TimedGame& g, Mode mode) : game_(g), space_(ext_clock_space(g)), mode_(mode) {}

namespace {

struct Chain {
  std::vector<Region> regions;
  std::vector<bool> wrapped;  // z reached 1 somewhere in steps 1..j
};

Chain make_chain(const ClockSpace& cs, const Constraint& inv, const Region& base) {
  Chain c;
  c.regions.push_back(base);
  c.wrapped.push_back(false);
  Region cur = base;
  bool w = false;
  for (int j = 1; j <= 2; ++j) {
    TimeStep s = time_successor(cs, cur);
    if (s.absorbing || !region_satisfies(cs, s.region, inv)) break;
    cur = s.region;
    w = w || s.wrapped;
    c.regions.push_back(cur);
    c.wrapped.push_back(w);
  }
  return c;
}

}  // namespace

std::vector<Region> MoveGenerator::chain(const Region& base) const {
  return make_chain(space_, game_.locations.at(base.loc).invariant, base).regions;
}

std::vector<MoveTarget> MoveGenerator::moves(const ExtRegion& r) const {
  const int loc = static_cast<int>(r.base.loc);
  const Chain ch = make_chain(space_, game_.locations.at(loc).invariant, r.base);
  std::vector<MoveTarget> out;
  auto land = [&](const Region& at, int j, Player owner, Player blamed, int target_loc, const std::vector<int>& resets,
                  std::int16_t action) {
    MoveTarget m;
    m.owner = owner;
    m.j = static_cast<std::uint8_t>(j);
    m.action = action;
    Region nb = resets.empty() ? at : reset_region(at, resets);
    nb.loc = static_cast<std::uint32_t>(target_loc);
    m.target.base = nb;
    m.target.tick = ch.wrapped[j];
    m.target.tbl1 = blamed == Player::One && j <= 1;
    const int omega = game_.locations[target_loc].parity;
    m.target.p = static_cast<std::uint8_t>(r.tick ? omega : std::max<int>(r.p, omega));
    m.target.rb1 = mode_ == Mode::Exact ? true : (r.rb1 && (owner == Player::Two || is_open(at)));
    out.push_back(std::move(m));
  };
  static const std::vector<int> kNoReset;
  for (Player owner : {Player::One, Player::Two}) {
    for (int j = 0; j < static_cast<int>(ch.regions.size()); ++j) {
      const Region& at = ch.regions[j];
      land(at, j, owner, owner, loc, kNoReset, kPureDelay);
      for (int e : game_.edges_from(loc)) {
        const Edge& edge = game_.edges[e];
        if (edge.owner != owner || !region_satisfies(space_, at, edge.guard)) continue;
        Region after = edge.resets.empty() ? at : reset_region(at, edge.resets);
        after.loc = static_cast<std::uint32_t>(edge.target);
        if (!region_satisfies(space_, after, game_.locations[edge.target].invariant)) continue;
        land(at, j, owner, edge.blame, edge.target, edge.resets, static_cast<std::int16_t>(edge.action));
      }
    }
  }
  return out;
}

std::int64_t ExtGraph::find(const ExtRegion& r) const {
  auto it = index.find(r);
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::string to_string(const ExtGraph& graph, const ExtRegion& r) {
  std::ostringstream os;
  os << to_string(graph.space, r.base, graph.game.location_names()) << " | tick=" << r.tick << " tbl1=" << r.tbl1
     << " p=" << static_cast<int>(r.p);
  if (graph.mode == Mode::LimitRobust) os << " rb1=" << r.rb1;
  return os.str();
}

std::string ExtGraph::label(std::uint32_t n) const { return to_string(*this, nodes.at(n)); }

ExtGraph build_ext_region_graph(const TimedGame& g, Mode mode, const std::vector<Region>& seeds) {
  ExtGraph graph;
  graph.game = g;
  graph.mode = mode;
  graph.space = ext_clock_space(g);
  MoveGenerator gen(graph.game, mode);

  auto intern = [&](const ExtRegion& r) {
    auto [it, fresh] = graph.index.emplace(r, static_cast<std::uint32_t>(graph.nodes.size()));
    if (fresh) graph.nodes.push_back(r);
    return it->second;
  };
  for (const auto& s : seeds) {
    if (s.nclocks != g.clock_count()) throw std::invalid_argument("seed region has the wrong clock count");
    if (!region_satisfies(clock_space(g), s, g.locations.at(s.loc).invariant))
      throw std::invalid_argument("seed region violates the invariant of its location");
    graph.seeds.push_back(intern(seed_region(s)));
  }
  // Nodes are expanded in index order so move lists can be laid out contiguously.
  graph.offset.push_back(0);
  for (std::uint32_t n = 0; n < graph.nodes.size(); ++n) {
    const ExtRegion cur = graph.nodes[n];
    std::uint8_t mj = 0;
    for (const auto& m : gen.moves(cur)) {
      SymMove sm;
      sm.target = intern(m.target);
      sm.action = m.action;
      sm.j = m.j;
      sm.owner = m.owner;
      mj = std::max(mj, m.j);
      graph.moves.push_back(sm);
    }
    graph.max_j.push_back(mj);
    graph.offset.push_back(static_cast<std::uint32_t>(graph.moves.size()));
  }
  return graph;
}

std::string to_dot(const ExtGraph& graph) {
  std::ostringstream os;
  os << "digraph ext {\n  node [shape=box, fontname=monospace];\n";
  for (std::uint32_t n = 0; n < graph.size(); ++n)
    os << "  n" << n << " [label=\"" << graph.label(n) << "\\nprio " << graph.priority(n) << "\"];\n";
  for (std::uint32_t n = 0; n < graph.size(); ++n) {
    for (const auto& m : graph.moves_of(n)) {
      os << "  n" << n << " -> n" << m.target << " [label=\"p" << static_cast<int>(m.owner) << " j=" << int(m.j) << " "
         << (m.action == kPureDelay ? std::string("delay") : graph.game.action_names[m.action]) << "\"";
      if (m.owner == Player::Two) os << ", style=dashed";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace tpg
