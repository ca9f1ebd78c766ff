#include "tpg/parity_game.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tpg {

std::uint32_t FiniteParityGame::max_priority() const {
  std::uint32_t m = 0;
  for (auto p : priority) m = std::max(m, p);
  return m;
}

bool FiniteParityGame::total() const {
  for (std::size_t v = 0; v < size(); ++v)
    if (offset[v] == offset[v + 1]) return false;
  return true;
}

std::uint32_t ParityGameBuilder::add_state(std::uint8_t owner, std::uint32_t priority, StateTag tag) {
  g_.owner.push_back(owner);
  g_.priority.push_back(priority);
  g_.tag.push_back(tag);
  return static_cast<std::uint32_t>(g_.owner.size() - 1);
}

void ParityGameBuilder::add_edge(std::uint32_t from, std::uint32_t to) { edges_.emplace_back(from, to); }

void ParityGameBuilder::set_label(std::uint32_t v, std::string text) {
  if (g_.label.size() < g_.owner.size()) g_.label.resize(g_.owner.size());
  g_.label[v] = std::move(text);
}

FiniteParityGame ParityGameBuilder::finish() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  const std::size_t n = g_.owner.size();
  g_.offset.assign(n + 1, 0);
  for (const auto& [f, t] : edges_) {
    if (f >= n || t >= n) throw std::out_of_range("edge endpoint is not a state");
    ++g_.offset[f + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g_.offset[v + 1] += g_.offset[v];
  g_.succ.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) g_.succ[i] = edges_[i].second;
  if (!g_.label.empty()) g_.label.resize(n);
  edges_.clear();
  FiniteParityGame out = std::move(g_);
  g_ = {};
  return out;
}

std::string to_pgsolver(const FiniteParityGame& g) {
  std::ostringstream os;
  os << "parity " << (g.size() == 0 ? 0 : g.size() - 1) << ";\n";
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    os << v << " " << g.priority[v] << " " << (g.owner[v] == 1 ? 0 : 1) << " ";
    for (auto it = g.succ_begin(v); it != g.succ_end(v); ++it) os << (it == g.succ_begin(v) ? "" : ",") << *it;
    if (!g.label.empty() && !g.label[v].empty()) {
      std::string l = g.label[v];
      std::replace(l.begin(), l.end(), '"', '\'');
      os << " \"" << l << "\"";
    }
    os << ";\n";
  }
  return os.str();
}

FiniteParityGame parse_pgsolver(std::string_view text) {
  struct Raw {
    std::uint32_t prio;
    int owner;
    std::vector<std::uint64_t> succ;
    std::string label;
  };
  std::map<std::uint64_t, Raw> states;
  std::string body(text);
  // statements end with ';' outside of quotes
  std::vector<std::pair<std::string, int>> stmts;
  {
    std::string cur;
    bool quoted = false;
    int line = 1, stmt_line = 1;
    for (char c : body) {
      if (c == '\n') ++line;
      if (c == '"') quoted = !quoted;
      if (c == ';' && !quoted) {
        stmts.emplace_back(cur, stmt_line);
        cur.clear();
        stmt_line = line;
        continue;
      }
      if (cur.empty() && std::isspace(static_cast<unsigned char>(c))) {
        stmt_line = line;
        continue;
      }
      cur += c;
    }
    std::string rest;
    for (char c : cur)
      if (!std::isspace(static_cast<unsigned char>(c))) rest += c;
    if (!rest.empty()) throw std::invalid_argument("pgsolver: missing ';' at end of input");
  }
  bool header = false;
  for (const auto& [s, line] : stmts) {
    std::istringstream in(s);
    std::string first;
    in >> first;
    auto fail = [line = line](const std::string& m) {
      throw std::invalid_argument("pgsolver line " + std::to_string(line) + ": " + m);
    };
    if (first == "parity") {
      header = true;
      continue;
    }
    if (first == "start") continue;
    if (!header) fail("missing 'parity <n>;' header");
    Raw r;
    std::uint64_t id;
    try {
      id = std::stoull(first);
    } catch (...) {
      fail("expected a state identifier");
    }
    std::string succs;
    if (!(in >> r.prio >> r.owner >> succs)) fail("expected '<id> <priority> <owner> <successors>'");
    if (r.owner != 0 && r.owner != 1) fail("owner must be 0 or 1");
    std::stringstream ss(succs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        r.succ.push_back(std::stoull(item));
      } catch (...) {
        fail("bad successor '" + item + "'");
      }
    }
    std::string rest;
    std::getline(in, rest);
    auto q1 = rest.find('"'), q2 = rest.rfind('"');
    if (q1 != std::string::npos && q2 > q1) r.label = rest.substr(q1 + 1, q2 - q1 - 1);
    if (!states.emplace(id, std::move(r)).second) fail("duplicate state " + std::to_string(id));
  }
  std::map<std::uint64_t, std::uint32_t> dense;
  for (const auto& [id, _] : states) dense.emplace(id, static_cast<std::uint32_t>(dense.size()));
  ParityGameBuilder b;
  bool labels = false;
  for (const auto& [id, r] : states) {
    b.add_state(r.owner == 0 ? 1 : 2, r.prio);
    labels |= !r.label.empty();
  }
  for (const auto& [id, r] : states) {
    for (auto s : r.succ) {
      auto it = dense.find(s);
      if (it == dense.end()) throw std::invalid_argument("pgsolver: successor " + std::to_string(s) + " is not a state");
      b.add_edge(dense[id], it->second);
    }
    if (labels) b.set_label(dense[id], r.label);
  }
  return b.finish();
}

std::vector<std::vector<std::uint32_t>> strongly_connected_components(const FiniteParityGame& g) {
  const auto n = static_cast<std::uint32_t>(g.size());
  std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;  // state, next edge offset
  std::vector<std::vector<std::uint32_t>> out;
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != UINT32_MAX) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    frames.emplace_back(root, g.offset[root]);
    while (!frames.empty()) {
      auto& [v, e] = frames.back();
      if (e < g.offset[v + 1]) {
        const auto w = g.succ[e++];
        if (index[w] == UINT32_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, g.offset[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] != index[done]) continue;
      std::vector<std::uint32_t> comp;
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != done);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  }
  return out;
}

}  // namespace tpg
