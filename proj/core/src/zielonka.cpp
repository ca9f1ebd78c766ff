#include "tpg/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpg {

namespace {

class Zielonka {
 public:
  explicit Zielonka(const FiniteParityGame& g) : g_(g) {
    const std::size_t n = g.size();
    pred_offset_.assign(n + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v)
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) ++pred_offset_[*it + 1];
    for (std::size_t v = 0; v < n; ++v) pred_offset_[v + 1] += pred_offset_[v];
    preds_.resize(g.edge_count());
    std::vector<std::uint32_t> fill(pred_offset_.begin(), pred_offset_.end() - 1);
    for (std::uint32_t v = 0; v < n; ++v)
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) preds_[fill[*it]++] = v;
    depth_.assign(n, 0);
    mark_.assign(n, 0);
    count_stamp_.assign(n, 0);
    count_.assign(n, 0);
    sol_.winner.assign(n, 0);
    sol_.strategy.assign(n, -1);
  }

  Solution run() {
    std::vector<std::uint32_t> all(g_.size());
    for (std::uint32_t v = 0; v < g_.size(); ++v) all[v] = v;
    solve(all, 0);
    for (std::uint32_t v = 0; v < g_.size(); ++v)
      if (sol_.winner[v] != g_.owner[v]) sol_.strategy[v] = -1;
    return std::move(sol_);
  }

 private:
  bool in_sub(std::uint32_t v, int d) const { return depth_[v] >= d; }

  // Attractor of `target` for `who` inside the level-d subgame; members end
  // up with mark_ == stamp_. Attracted states of `who` record their choice.
  std::vector<std::uint32_t> attractor(const std::vector<std::uint32_t>& target, std::uint8_t who, int d) {
    ++stamp_;
    std::vector<std::uint32_t> out = target;
    for (auto t : target) mark_[t] = stamp_;
    for (std::size_t head = 0; head < out.size(); ++head) {
      const std::uint32_t v = out[head];
      for (auto i = pred_offset_[v]; i < pred_offset_[v + 1]; ++i) {
        const std::uint32_t u = preds_[i];
        if (!in_sub(u, d) || mark_[u] == stamp_) continue;
        if (g_.owner[u] == who) {
          sol_.strategy[u] = v;
        } else {
          if (count_stamp_[u] != stamp_) {
            count_stamp_[u] = stamp_;
            std::uint32_t c = 0;
            for (auto it = g_.succ_begin(u); it != g_.succ_end(u); ++it) c += in_sub(*it, d) ? 1 : 0;
            count_[u] = c;
          }
          if (--count_[u] != 0) continue;
        }
        mark_[u] = stamp_;
        out.push_back(u);
      }
    }
    return out;
  }

  void descend(const std::vector<std::uint32_t>& states, const std::vector<std::uint32_t>& sub, int d) {
    for (auto v : states) depth_[v] = d;
    for (auto v : sub) depth_[v] = d + 1;
  }

  void solve(const std::vector<std::uint32_t>& states, int d) {
    if (states.empty()) return;
    std::uint32_t p = 0;
    for (auto v : states) p = std::max(p, g_.priority[v]);
    const std::uint8_t alpha = p % 2 == 0 ? 1 : 2;
    const std::uint8_t beta = alpha == 1 ? 2 : 1;

    std::vector<std::uint32_t> top;
    for (auto v : states)
      if (g_.priority[v] == p) top.push_back(v);
    attractor(top, alpha, d);
    std::vector<std::uint32_t> rest;
    for (auto v : states)
      if (mark_[v] != stamp_) rest.push_back(v);
    descend(states, rest, d);
    solve(rest, d + 1);

    std::vector<std::uint32_t> lost;
    for (auto v : rest)
      if (sol_.winner[v] == beta) lost.push_back(v);
    if (lost.empty()) {
      // alpha wins the whole subgame; top states may pick any move inside it
      for (auto v : states) depth_[v] = d;
      for (auto v : top) {
        if (g_.owner[v] != alpha) continue;
        for (auto it = g_.succ_begin(v); it != g_.succ_end(v); ++it)
          if (in_sub(*it, d)) {
            sol_.strategy[v] = *it;
            break;
          }
      }
      for (auto v : states) sol_.winner[v] = alpha;
      return;
    }
    for (auto v : states) depth_[v] = d;
    auto b = attractor(lost, beta, d);
    for (auto v : b) sol_.winner[v] = beta;
    std::vector<std::uint32_t> rest2;
    for (auto v : states)
      if (mark_[v] != stamp_) rest2.push_back(v);
    descend(states, rest2, d);
    solve(rest2, d + 1);
  }

  const FiniteParityGame& g_;
  std::vector<std::uint32_t> pred_offset_;
  std::vector<std::uint32_t> preds_;
  std::vector<int> depth_;
  std::vector<std::uint32_t> mark_;
  std::vector<std::uint32_t> count_stamp_;
  std::vector<std::uint32_t> count_;
  std::uint32_t stamp_ = 0;
  Solution sol_;
};

}  // namespace

Solution solve_zielonka(const FiniteParityGame& g) {
  if (!g.total()) throw std::invalid_argument("parity game has a state without successors");
  return Zielonka(g).run();
}

}  // namespace tpg
