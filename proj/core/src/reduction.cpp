#include "tpg/reduction.hpp"

#include <stdexcept>

namespace tpg {

namespace {

std::vector<std::uint32_t> entry_by_region(const FiniteParityGame& g, std::size_t regions) {
  std::vector<std::uint32_t> entry(regions, UINT32_MAX);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const auto& t = g.tag[v];
    if (t.stage == Stage::Choose1 || t.stage == Stage::Entry) entry.at(t.region) = v;
  }
  return entry;
}

}  // namespace

FiniteParityGame build_af(const ExtGraph& graph) {
  ParityGameBuilder b;
  const auto n = static_cast<std::uint32_t>(graph.size());
  // <R,1> states take indices 0..n-1
  for (std::uint32_t r = 0; r < n; ++r)
    b.add_state(1, graph.priority(r), StateTag{Stage::Choose1, r, -1, -1});
  for (std::uint32_t r = 0; r < n; ++r) {
    const auto prio = static_cast<std::uint32_t>(graph.priority(r));
    auto ms = graph.moves_of(r);
    for (const auto& m1 : ms) {
      if (m1.owner != Player::One) continue;
      auto s = b.add_state(2, prio, StateTag{Stage::Respond2, r, static_cast<std::int8_t>(m1.j), m1.action});
      b.add_edge(r, s);
      for (const auto& m2 : ms)  // player 2 blocks with a move no longer than j+1 regions
        if (m2.owner == Player::Two && m2.j <= m1.j) b.add_edge(s, m2.target);
      b.add_edge(s, m1.target);  // allow: player 2 always has the pure delay to the same region
    }
    if (graph.game.relinquish) {
      auto s = b.add_state(2, prio, StateTag{Stage::Respond2, r, 0, kRelinquishTag});
      b.add_edge(r, s);
      for (const auto& m2 : ms)
        if (m2.owner == Player::Two) b.add_edge(s, m2.target);
    }
  }
  return b.finish();
}

FiniteParityGame build_af_star(const ExtGraph& graph, bool keep_dummies) {
  if (!keep_dummies) return eliminate_dummies(build_af_star(graph, true));
  ParityGameBuilder b;
  const auto n = static_cast<std::uint32_t>(graph.size());
  for (std::uint32_t r = 0; r < n; ++r) b.add_state(1, graph.priority(r), StateTag{Stage::Entry, r, -1, -1});
  // <R,1_c^dum> states take indices n..2n-1
  for (std::uint32_t r = 0; r < n; ++r) {
    auto d = b.add_state(1, graph.priority(r), StateTag{Stage::Dummy, r, -1, -1});
    b.add_edge(d, r);
  }
  auto dum = [n](std::uint32_t r) { return n + r; };
  for (std::uint32_t r = 0; r < n; ++r) {
    const auto prio = static_cast<std::uint32_t>(graph.priority(r));
    auto ms = graph.moves_of(r);
    if (graph.game.relinquish) {
      auto s2 = b.add_state(2, prio, StateTag{Stage::Relinquished, r, -1, -1});
      b.add_edge(r, s2);
      for (const auto& m2 : ms)
        if (m2.owner == Player::Two) b.add_edge(s2, dum(m2.target));
    }
    for (int j = 0; j <= graph.max_j[r]; ++j) {
      bool p1_has = false;
      for (const auto& m : ms) p1_has |= m.owner == Player::One && m.j == j;
      if (!p1_has) continue;
      auto block = b.add_state(2, prio, StateTag{Stage::Block, r, static_cast<std::int8_t>(j), -1});
      auto commit = b.add_state(1, prio, StateTag{Stage::Commit, r, static_cast<std::int8_t>(j), -1});
      b.add_edge(r, block);
      b.add_edge(block, commit);
      for (const auto& m : ms) {
        if (m.owner == Player::Two && m.j <= j) b.add_edge(block, dum(m.target));
        if (m.owner == Player::One && m.j == j) b.add_edge(commit, m.target);
      }
    }
  }
  return b.finish();
}

FiniteParityGame eliminate_dummies(const FiniteParityGame& g) {
  std::vector<std::uint32_t> renum(g.size(), UINT32_MAX);
  ParityGameBuilder b;
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (g.tag[v].stage != Stage::Dummy) renum[v] = b.add_state(g.owner[v], g.priority[v], g.tag[v]);
  auto resolve = [&](std::uint32_t t) {
    if (g.tag[t].stage != Stage::Dummy) return renum[t];
    if (g.offset[t + 1] - g.offset[t] != 1) throw std::logic_error("dummy state must have exactly one successor");
    std::uint32_t next = *g.succ_begin(t);
    if (g.tag[next].stage == Stage::Dummy) throw std::logic_error("dummy state leads to a dummy state");
    return renum[next];
  };
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (g.tag[v].stage == Stage::Dummy) continue;
    for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) b.add_edge(renum[v], resolve(*it));
    if (!g.label.empty()) b.set_label(renum[v], g.label[v]);
  }
  return b.finish();
}

std::vector<std::uint32_t> entry_states(const FiniteParityGame& g, std::size_t regions) {
  return entry_by_region(g, regions);
}

std::vector<std::uint8_t> regstates(const FiniteParityGame& g, const std::vector<std::uint8_t>& win1,
                                    std::size_t regions) {
  if (win1.size() != g.size()) throw std::invalid_argument("winning flags do not match the game");
  auto entry = entry_by_region(g, regions);
  std::vector<std::uint8_t> out(regions, 0);
  for (std::size_t r = 0; r < regions; ++r)
    if (entry[r] != UINT32_MAX) out[r] = win1[entry[r]];
  return out;
}

}  // namespace tpg
