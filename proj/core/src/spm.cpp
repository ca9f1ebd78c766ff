#include "tpg/solver.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace tpg {

namespace {

// Small progress measures for the even player (player 1) under max parity.
// A measure holds one counter per odd priority, most significant = highest.
class ProgressMeasures {
 public:
  explicit ProgressMeasures(const FiniteParityGame& g) : g_(g) {
    const auto maxp = g.max_priority();
    k_ = (maxp + 1) / 2;  // odd priorities 1,3,..,2k-1
    bound_.assign(k_, 0);
    for (auto p : g.priority)
      if (p % 2 == 1) ++bound_[p / 2];
    rho_.assign(g.size() * k_, 0);
    top_.assign(g.size(), 0);
    pred_offset_.assign(g.size() + 1, 0);
    for (std::uint32_t v = 0; v < g.size(); ++v)
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) ++pred_offset_[*it + 1];
    for (std::size_t v = 0; v < g.size(); ++v) pred_offset_[v + 1] += pred_offset_[v];
    preds_.resize(g.edge_count());
    std::vector<std::uint32_t> fill(pred_offset_.begin(), pred_offset_.end() - 1);
    for (std::uint32_t v = 0; v < g.size(); ++v)
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) preds_[fill[*it]++] = v;
  }

  // Processes up to `budget` lifts; true once the fixpoint is reached.
  bool step(std::size_t budget) {
    if (!started_) {
      started_ = true;
      queued_.assign(g_.size(), 1);
      for (std::uint32_t v = 0; v < g_.size(); ++v) work_.push_back(v);
      cand_.resize(k_);
      best_.resize(k_);
    }
    for (; budget > 0 && !work_.empty(); --budget) {
      const std::uint32_t v = work_.front();
      work_.pop_front();
      queued_[v] = 0;
      if (top_[v] || !lift(v, cand_, best_)) continue;
      for (auto i = pred_offset_[v]; i < pred_offset_[v + 1]; ++i) {
        const auto u = preds_[i];
        if (!queued_[u] && !top_[u]) {
          queued_[u] = 1;
          work_.push_back(u);
        }
      }
    }
    return work_.empty();
  }

  void run() {
    while (!step(SIZE_MAX)) {
    }
  }

  bool is_top(std::uint32_t v) const { return top_[v] != 0; }

  // Successor minimising the progress value; the even player's winning choice.
  std::uint32_t best_successor(std::uint32_t v) const {
    std::vector<std::uint32_t> cand(k_), best(k_);
    bool have = false, best_top = true;
    std::uint32_t arg = *g_.succ_begin(v);
    for (auto it = g_.succ_begin(v); it != g_.succ_end(v); ++it) {
      bool t = prog(v, *it, cand);
      if (!have || less(t, cand, best_top, best)) {
        have = true;
        best_top = t;
        best = cand;
        arg = *it;
      }
    }
    return arg;
  }

 private:
  // Writes prog(rho, v, w) into out; returns true for top.
  bool prog(std::uint32_t v, std::uint32_t w, std::vector<std::uint32_t>& out) const {
    if (top_[w]) return true;
    const std::uint32_t p = g_.priority[v];
    const std::uint32_t* m = &rho_[static_cast<std::size_t>(w) * k_];
    for (std::uint32_t i = 0; i < k_; ++i) out[i] = (2 * i + 1 >= p) ? m[i] : 0;
    if (p % 2 == 0) return false;
    for (std::uint32_t i = p / 2; i < k_; ++i) {
      if (out[i] < bound_[i]) {
        ++out[i];
        return false;
      }
      out[i] = 0;
    }
    return true;
  }

  bool less(bool at, const std::vector<std::uint32_t>& a, bool bt, const std::vector<std::uint32_t>& b) const {
    if (at || bt) return !at && bt;
    for (std::uint32_t i = k_; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }

  bool lift(std::uint32_t v, std::vector<std::uint32_t>& cand, std::vector<std::uint32_t>& best) {
    const bool even_owner = g_.owner[v] == 1;
    bool have = false, best_top = false;
    for (auto it = g_.succ_begin(v); it != g_.succ_end(v); ++it) {
      bool t = prog(v, *it, cand);
      if (!have || (even_owner ? less(t, cand, best_top, best) : less(best_top, best, t, cand))) {
        have = true;
        best_top = t;
        best = cand;
      }
    }
    std::uint32_t* cur = &rho_[static_cast<std::size_t>(v) * k_];
    if (!best_top) {
      bool grew = false;
      for (std::uint32_t i = k_; i-- > 0;)
        if (cur[i] != best[i]) {
          grew = cur[i] < best[i];
          break;
        }
      if (!grew) return false;
    }
    if (best_top) {
      top_[v] = 1;
    } else {
      std::copy(best.begin(), best.end(), cur);
    }
    return true;
  }

  const FiniteParityGame& g_;
  bool started_ = false;
  std::deque<std::uint32_t> work_;
  std::vector<char> queued_;
  std::vector<std::uint32_t> cand_, best_;
  std::uint32_t k_ = 0;
  std::vector<std::uint32_t> bound_;
  std::vector<std::uint32_t> rho_;
  std::vector<char> top_;
  std::vector<std::uint32_t> pred_offset_;
  std::vector<std::uint32_t> preds_;
};

// Subgame on `keep`; with `dual` owners are swapped and priorities shifted by one.
FiniteParityGame subgame(const FiniteParityGame& g, const std::vector<std::uint32_t>& keep, bool dual,
                         std::vector<std::uint32_t>& index) {
  index.assign(g.size(), UINT32_MAX);
  ParityGameBuilder b;
  for (auto v : keep) {
    const std::uint8_t owner = dual ? (g.owner[v] == 1 ? 2 : 1) : g.owner[v];
    index[v] = b.add_state(owner, g.priority[v] + (dual ? 1 : 0));
  }
  for (auto v : keep)
    for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it)
      if (index[*it] != UINT32_MAX) b.add_edge(index[v], index[*it]);
  return b.finish();
}

// Merges priorities of equal parity with no other priority between them;
// winners are unchanged, measures get far fewer counters to climb.
FiniteParityGame compress_priorities(FiniteParityGame g) {
  std::vector<std::uint32_t> seen(g.priority.begin(), g.priority.end());
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<std::uint32_t> to(seen.empty() ? 0 : seen.back() + 1, 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (i == 0) next = seen[0] % 2;
    else if (seen[i] % 2 != seen[i - 1] % 2) ++next;
    to[seen[i]] = next;
  }
  for (auto& p : g.priority) p = to[p];
  return g;
}

}  // namespace

namespace {

Solution spm_core(const FiniteParityGame& input) {
  const FiniteParityGame g = compress_priorities(input);
  std::vector<std::uint32_t> all(g.size()), index;
  for (std::uint32_t v = 0; v < g.size(); ++v) all[v] = v;

  // Both measures climb slowly only on the opponent's winning states, so
  // they run in lockstep and the first fixpoint fixes the partition.
  std::vector<std::uint8_t> winner(g.size(), 1);
  {
    const FiniteParityGame dg = subgame(g, all, true, index);
    ProgressMeasures even(g), odd(dg);
    constexpr std::size_t kChunk = 4096;
    for (;;) {
      if (even.step(kChunk)) {
        for (std::uint32_t v = 0; v < g.size(); ++v)
          if (even.is_top(v)) winner[v] = 2;
        break;
      }
      if (odd.step(kChunk)) {
        for (std::uint32_t v = 0; v < g.size(); ++v)
          if (!odd.is_top(v)) winner[v] = 2;
        break;
      }
    }
  }

  // Each side is then certified by measures on its own region, which the
  // opponent cannot leave: no state there may be top.
  Solution s;
  s.winner = winner;
  s.strategy.assign(g.size(), -1);
  for (std::uint8_t p : {1, 2}) {
    std::vector<std::uint32_t> part;
    for (std::uint32_t v = 0; v < g.size(); ++v)
      if (winner[v] == p) part.push_back(v);
    if (part.empty()) continue;
    for (auto v : part)
      if (g.owner[v] != p)
        for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it)
          if (winner[*it] != p)
            throw std::logic_error("progress measures are inconsistent: player " + std::to_string(p == 1 ? 2 : 1) +
                                   " escapes at state " + std::to_string(v));
    const FiniteParityGame sub = subgame(g, part, p == 2, index);
    if (!sub.total()) throw std::logic_error("progress measures are inconsistent: a winner is stuck");
    ProgressMeasures m(sub);
    m.run();
    for (auto v : part) {
      if (m.is_top(index[v]))
        throw std::logic_error("progress measures are inconsistent at state " + std::to_string(v));
      if (g.owner[v] == p) s.strategy[v] = part[m.best_successor(index[v])];
    }
  }
  return s;
}

}  // namespace

Solution solve_spm(const FiniteParityGame& g) {
  if (!g.total()) throw std::invalid_argument("parity game has a state without successors");
  Solution s;
  s.winner.assign(g.size(), 0);
  s.strategy.assign(g.size(), -1);
  // Components are solved sinks first; edges leaving a component end in a
  // sink state won by whoever already won the target.
  std::vector<std::uint32_t> local(g.size(), UINT32_MAX);
  for (const auto& comp : strongly_connected_components(g)) {
    ParityGameBuilder b;
    for (auto v : comp) local[v] = b.add_state(g.owner[v], g.priority[v]);
    const auto sink1 = b.add_state(1, 0), sink2 = b.add_state(1, 1);
    b.add_edge(sink1, sink1);
    b.add_edge(sink2, sink2);
    for (auto v : comp)
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it)
        b.add_edge(local[v], local[*it] != UINT32_MAX ? local[*it] : (s.winner[*it] == 1 ? sink1 : sink2));
    const Solution part = spm_core(b.finish());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto v = comp[i];
      s.winner[v] = part.winner[i];
      if (part.strategy[i] < 0) continue;
      const auto t = static_cast<std::uint32_t>(part.strategy[i]);
      if (t < comp.size()) {
        s.strategy[v] = comp[t];
        continue;
      }
      const std::uint8_t want = t == sink1 ? 1 : 2;
      for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it)
        if (local[*it] == UINT32_MAX && s.winner[*it] == want) {
          s.strategy[v] = *it;
          break;
        }
    }
    for (auto v : comp) local[v] = UINT32_MAX;
  }
  return s;
}

}  // namespace tpg
