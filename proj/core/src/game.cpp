#include "tpg/game.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tpg {

namespace {

constexpr int kMaxParity = 64;
constexpr int kMaxCeiling = 60000;

bool valid_id(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void check_clocks(const Constraint& c, int nclocks, const std::string& where) {
  bool ok = true;
  std::vector<const Constraint*> stack{&c};
  while (!stack.empty()) {
    const Constraint* cur = stack.back();
    stack.pop_back();
    if (cur->kind() == Constraint::Kind::Atom || cur->kind() == Constraint::Kind::Diag) {
      if (cur->clock() < 0 || cur->clock() >= nclocks) ok = false;
      if (cur->kind() == Constraint::Kind::Diag && (cur->clock2() < 0 || cur->clock2() >= nclocks)) ok = false;
    }
    for (const auto& k : cur->children()) stack.push_back(&k);
  }
  if (!ok) throw std::invalid_argument(where + ": constraint references an undeclared clock");
}

}  // namespace

void TimedGame::finalize() {
  const int nclocks = clock_count();
  std::set<std::string> seen;
  for (const auto& c : clocks) {
    if (!valid_id(c.name)) throw std::invalid_argument("invalid clock name '" + c.name + "'");
    if (!seen.insert(c.name).second) throw std::invalid_argument("duplicate clock '" + c.name + "'");
  }
  seen.clear();
  if (locations.empty()) throw std::invalid_argument("game has no locations");
  for (const auto& l : locations) {
    if (!valid_id(l.name)) throw std::invalid_argument("invalid location name '" + l.name + "'");
    if (!seen.insert(l.name).second) throw std::invalid_argument("duplicate location '" + l.name + "'");
    if (l.parity < 0 || l.parity >= kMaxParity)
      throw std::invalid_argument("parity of location '" + l.name + "' out of range [0," + std::to_string(kMaxParity) + ")");
    check_clocks(l.invariant, nclocks, "location " + l.name);
  }
  if (action_owner.size() != action_names.size()) throw std::invalid_argument("action table is inconsistent");

  std::vector<std::int64_t> max_const(nclocks, 0);
  std::set<std::pair<int, int>> source_action;
  out_edges_.assign(locations.size(), {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& e = edges[i];
    const int nloc = static_cast<int>(locations.size());
    if (e.source < 0 || e.source >= nloc || e.target < 0 || e.target >= nloc)
      throw std::invalid_argument("edge references an undeclared location");
    if (e.action < 0 || e.action >= static_cast<int>(action_names.size()))
      throw std::invalid_argument("edge references an undeclared action");
    if (action_owner[e.action] != e.owner)
      throw std::invalid_argument("action '" + action_names[e.action] + "' is used by both players");
    if (!source_action.insert({e.source, e.action}).second)
      throw std::invalid_argument("duplicate edge for action '" + action_names[e.action] + "' from location '" +
                                  locations[e.source].name + "'");
    std::sort(e.resets.begin(), e.resets.end());
    e.resets.erase(std::unique(e.resets.begin(), e.resets.end()), e.resets.end());
    for (int x : e.resets)
      if (x < 0 || x >= nclocks) throw std::invalid_argument("edge resets an undeclared clock");
    check_clocks(e.guard, nclocks, "edge " + action_names[e.action]);
    collect_constants(e.guard, max_const);
    out_edges_[e.source].push_back(static_cast<int>(i));
  }
  for (const auto& l : locations) collect_constants(l.invariant, max_const);
  max_const.resize(nclocks, 0);
  for (int x = 0; x < nclocks; ++x) {
    auto need = std::max<std::int64_t>({max_const[x], clocks[x].ceiling, 1});
    if (need > kMaxCeiling) throw std::invalid_argument("clock '" + clocks[x].name + "' ceiling too large");
    clocks[x].ceiling = static_cast<int>(need);
  }
  for (const auto& q : queries) {
    if (q.state.location < 0 || q.state.location >= static_cast<int>(locations.size()))
      throw std::invalid_argument("query '" + q.label + "' has an undeclared location");
    if (static_cast<int>(q.state.valuation.size()) != nclocks)
      throw std::invalid_argument("query '" + q.label + "' does not value every clock");
    for (const auto& v : q.state.valuation)
      if (v < 0) throw std::invalid_argument("query '" + q.label + "' has a negative clock value");
    if (!eval_constraint(locations[q.state.location].invariant, q.state.valuation))
      throw std::invalid_argument("query '" + q.label + "' violates the invariant of its location");
  }
}

int TimedGame::order() const {
  int m = 0;
  for (const auto& l : locations) m = std::max(m, l.parity);
  return m + 1;
}

int TimedGame::find_clock(std::string_view n) const {
  for (std::size_t i = 0; i < clocks.size(); ++i)
    if (clocks[i].name == n) return static_cast<int>(i);
  return -1;
}

int TimedGame::find_location(std::string_view n) const {
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i].name == n) return static_cast<int>(i);
  return -1;
}

int TimedGame::find_action(std::string_view n) const {
  for (std::size_t i = 0; i < action_names.size(); ++i)
    if (action_names[i] == n) return static_cast<int>(i);
  return -1;
}

int TimedGame::add_action(const std::string& n, Player owner) {
  int a = find_action(n);
  if (a >= 0) {
    if (action_owner[a] != owner) throw std::invalid_argument("action '" + n + "' is used by both players");
    return a;
  }
  action_names.push_back(n);
  action_owner.push_back(owner);
  return static_cast<int>(action_names.size()) - 1;
}

int TimedGame::edge_for(int source, int action) const {
  for (int e : out_edges_.at(source))
    if (edges[e].action == action) return e;
  return -1;
}

std::vector<std::string> TimedGame::clock_names() const {
  std::vector<std::string> out;
  for (const auto& c : clocks) out.push_back(c.name);
  return out;
}

std::vector<std::string> TimedGame::location_names() const {
  std::vector<std::string> out;
  for (const auto& l : locations) out.push_back(l.name);
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  std::string text;
  int column = 0;
  bool quoted = false;
};

std::vector<Token> tokenize(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token t;
    t.column = static_cast<int>(i) + 1;
    if (c == '"') {
      auto close = line.find('"', i + 1);
      if (close == std::string::npos) throw ParseError("unterminated string", lineno, t.column);
      t.text = line.substr(i + 1, close - i - 1);
      t.quoted = true;
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#' && line[j] != '"') ++j;
      t.text = line.substr(i, j - i);
      i = j;
    }
    out.push_back(std::move(t));
  }
  return out;
}

struct Record {
  int line = 0;
  std::string raw;
  std::vector<Token> toks;
};

class GameParser {
 public:
  explicit GameParser(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto toks = tokenize(line, lineno);
      if (!toks.empty()) records_.push_back({lineno, line, std::move(toks)});
    }
  }

  TimedGame run() {
    bool named = false;
    for (const auto& r : records_) {
      const auto& kw = r.toks[0].text;
      if (kw == "game") {
        expect_count(r, 2, 2);
        if (named) fail(r, 0, "duplicate 'game' line");
        g_.name = r.toks[1].text;
        named = true;
      } else if (kw == "clock") {
        clock_line(r);
      } else if (kw == "relinquish") {
        expect_count(r, 2, 2);
        if (r.toks[1].text != "on" && r.toks[1].text != "off") fail(r, 1, "expected 'on' or 'off'");
        g_.relinquish = r.toks[1].text == "on";
      } else if (kw != "loc" && kw != "edge" && kw != "state") {
        fail(r, 0, "unknown directive '" + kw + "'");
      }
    }
    for (const auto& r : records_)
      if (r.toks[0].text == "loc") loc_line(r);
    for (const auto& r : records_)
      if (r.toks[0].text == "edge") edge_line(r);
    for (const auto& r : records_)
      if (r.toks[0].text == "state") state_line(r);
    if (records_.empty()) throw ParseError("empty game description", 1, 1);
    try {
      g_.finalize();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0, 0);
    }
    return g_;
  }

 private:
  [[noreturn]] static void fail(const Record& r, std::size_t tok, const std::string& msg) {
    int col = tok < r.toks.size() ? r.toks[tok].column : static_cast<int>(r.raw.size()) + 1;
    throw ParseError(msg, r.line, col);
  }

  static void expect_count(const Record& r, std::size_t lo, std::size_t hi) {
    if (r.toks.size() < lo) fail(r, r.toks.size(), "too few fields");
    if (r.toks.size() > hi) fail(r, hi, "unexpected field '" + r.toks[hi].text + "'");
  }

  static int integer(const Record& r, std::size_t tok) {
    if (tok >= r.toks.size()) fail(r, tok, "expected an integer");
    const auto& t = r.toks[tok].text;
    if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(r, tok, "expected a nonnegative integer, got '" + t + "'");
    return std::stoi(t);
  }

  Constraint constraint(const Record& r, std::size_t tok) {
    if (tok >= r.toks.size() || !r.toks[tok].quoted) fail(r, tok, "expected a quoted constraint");
    auto lookup = [this](std::string_view n) { return g_.find_clock(n); };
    return parse_constraint(r.toks[tok].text, lookup, r.line, r.toks[tok].column);
  }

  void clock_line(const Record& r) {
    expect_count(r, 2, 4);
    Clock c;
    c.name = r.toks[1].text;
    if (!valid_id(c.name)) fail(r, 1, "invalid clock name '" + c.name + "'");
    if (g_.find_clock(c.name) >= 0) fail(r, 1, "duplicate clock '" + c.name + "'");
    c.ceiling = 1;
    if (r.toks.size() > 2) {
      if (r.toks[2].text != "max") fail(r, 2, "expected 'max'");
      c.ceiling = integer(r, 3);
      if (c.ceiling <= 0) fail(r, 3, "clock ceiling must be positive");
    }
    g_.clocks.push_back(c);
  }

  void loc_line(const Record& r) {
    Location l;
    if (r.toks.size() < 2) fail(r, 1, "expected a location name");
    l.name = r.toks[1].text;
    if (!valid_id(l.name)) fail(r, 1, "invalid location name '" + l.name + "'");
    if (g_.find_location(l.name) >= 0) fail(r, 1, "duplicate location '" + l.name + "'");
    std::size_t i = 2;
    bool has_parity = false;
    while (i < r.toks.size()) {
      const auto& kw = r.toks[i].text;
      if (kw == "invariant") {
        l.invariant = constraint(r, i + 1);
        i += 2;
      } else if (kw == "parity") {
        l.parity = integer(r, i + 1);
        if (l.parity >= kMaxParity) fail(r, i + 1, "parity out of range");
        has_parity = true;
        i += 2;
      } else {
        fail(r, i, "unexpected field '" + kw + "'");
      }
    }
    if (!has_parity) fail(r, r.toks.size(), "missing 'parity'");
    g_.locations.push_back(l);
  }

  int location(const Record& r, std::size_t tok) {
    if (tok >= r.toks.size()) fail(r, tok, "expected a location");
    int l = g_.find_location(r.toks[tok].text);
    if (l < 0) fail(r, tok, "undeclared location '" + r.toks[tok].text + "'");
    return l;
  }

  void edge_line(const Record& r) {
    if (r.toks.size() < 7) fail(r, r.toks.size(), "too few fields in edge");
    Edge e;
    const auto& who = r.toks[1].text;
    if (who != "p1" && who != "p2") fail(r, 1, "expected 'p1' or 'p2'");
    e.owner = who == "p1" ? Player::One : Player::Two;
    const auto& act = r.toks[2].text;
    if (!valid_id(act)) fail(r, 2, "invalid action name '" + act + "'");
    int existing = g_.find_action(act);
    if (existing >= 0 && g_.action_owner[existing] != e.owner) fail(r, 2, "action '" + act + "' is used by both players");
    e.action = g_.add_action(act, e.owner);
    if (r.toks[3].text != "from") fail(r, 3, "expected 'from'");
    e.source = location(r, 4);
    if (r.toks[5].text != "to") fail(r, 5, "expected 'to'");
    e.target = location(r, 6);
    e.blame = e.owner;
    for (const auto& other : g_.edges)
      if (other.source == e.source && other.action == e.action)
        fail(r, 2, "duplicate edge for action '" + act + "' from '" + r.toks[4].text + "'");
    std::size_t i = 7;
    while (i < r.toks.size()) {
      const auto& kw = r.toks[i].text;
      if (kw == "guard") {
        e.guard = constraint(r, i + 1);
        i += 2;
      } else if (kw == "reset") {
        if (i + 1 >= r.toks.size()) fail(r, i + 1, "expected a clock list");
        const auto& list = r.toks[i + 1].text;
        if (list != "-") {
          std::stringstream ss(list);
          std::string item;
          while (std::getline(ss, item, ',')) {
            int x = g_.find_clock(item);
            if (x < 0) fail(r, i + 1, "undeclared clock '" + item + "'");
            e.resets.push_back(x);
          }
        }
        i += 2;
      } else if (kw == "blame") {
        if (i + 1 >= r.toks.size() || (r.toks[i + 1].text != "p1" && r.toks[i + 1].text != "p2"))
          fail(r, i + 1, "expected 'p1' or 'p2'");
        e.blame = r.toks[i + 1].text == "p1" ? Player::One : Player::Two;
        i += 2;
      } else {
        fail(r, i, "unexpected field '" + kw + "'");
      }
    }
    std::sort(e.resets.begin(), e.resets.end());
    g_.edges.push_back(e);
  }

  void state_line(const Record& r) {
    if (r.toks.size() < 3) fail(r, r.toks.size(), "expected 'state <label> <loc> ...'");
    QueryState q;
    q.label = r.toks[1].text;
    q.state.location = location(r, 2);
    q.state.valuation.assign(g_.clocks.size(), Rational(0));
    std::vector<bool> given(g_.clocks.size(), false);
    std::string rest;
    std::vector<int> cols;
    for (std::size_t i = 3; i < r.toks.size(); ++i) rest += r.toks[i].text + " ";
    std::stringstream ss(rest);
    std::string item;
    std::size_t tok = 3;
    while (std::getline(ss, item, ',')) {
      std::string trimmed;
      for (char c : item)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
      if (trimmed.empty()) continue;
      auto eq = trimmed.find('=');
      if (eq == std::string::npos) fail(r, tok, "expected <clock>=<rational>");
      int x = g_.find_clock(trimmed.substr(0, eq));
      if (x < 0) fail(r, tok, "undeclared clock '" + trimmed.substr(0, eq) + "'");
      try {
        q.state.valuation[x] = parse_rational(trimmed.substr(eq + 1));
      } catch (const std::invalid_argument& e) {
        fail(r, tok, e.what());
      }
      if (q.state.valuation[x] < 0) fail(r, tok, "clock values must be nonnegative");
      given[x] = true;
      ++tok;
    }
    for (std::size_t x = 0; x < given.size(); ++x)
      if (!given[x]) fail(r, 2, "state '" + q.label + "' does not value clock '" + g_.clocks[x].name + "'");
    g_.queries.push_back(std::move(q));
  }

  std::vector<Record> records_;
  TimedGame g_;
};

}  // namespace

TimedGame parse_game(std::string_view text) { return GameParser(text).run(); }

TimedGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

std::string serialize_game(const TimedGame& g) {
  std::ostringstream os;
  auto cn = g.clock_names();
  os << "game " << g.name << "\n";
  for (const auto& c : g.clocks) os << "clock " << c.name << " max " << c.ceiling << "\n";
  if (!g.relinquish) os << "relinquish off\n";
  for (const auto& l : g.locations) {
    os << "loc " << l.name;
    if (!l.invariant.is_true()) os << " invariant \"" << to_string(l.invariant, cn) << "\"";
    os << " parity " << l.parity << "\n";
  }
  for (const auto& e : g.edges) {
    os << "edge " << (e.owner == Player::One ? "p1" : "p2") << " " << g.action_names[e.action] << " from "
       << g.locations[e.source].name << " to " << g.locations[e.target].name;
    if (!e.guard.is_true()) os << " guard \"" << to_string(e.guard, cn) << "\"";
    if (!e.resets.empty()) {
      os << " reset ";
      for (std::size_t i = 0; i < e.resets.size(); ++i) os << (i ? "," : "") << cn[e.resets[i]];
    }
    if (e.blame != e.owner) os << " blame " << (e.blame == Player::One ? "p1" : "p2");
    os << "\n";
  }
  for (const auto& q : g.queries) {
    os << "state " << q.label << " " << g.locations[q.state.location].name;
    for (std::size_t x = 0; x < q.state.valuation.size(); ++x)
      os << (x ? ", " : " ") << cn[x] << "=" << to_string(q.state.valuation[x]);
    os << "\n";
  }
  return os.str();
}

// -------------------------------------------------------------- semantics

Valuation elapse(const Valuation& v, const Rational& d) {
  Valuation out = v;
  for (auto& x : out) x += d;
  return out;
}

bool valid_state(const TimedGame& g, const ConcreteState& s) {
  if (s.location < 0 || s.location >= static_cast<int>(g.locations.size())) return false;
  if (static_cast<int>(s.valuation.size()) != g.clock_count()) return false;
  for (const auto& v : s.valuation)
    if (v < 0) return false;
  return eval_constraint(g.locations[s.location].invariant, s.valuation);
}

bool holds_throughout(const TimedGame& g, const Constraint& c, const Valuation& v, const Rational& d) {
  // Truth of c only changes where some clock crosses an integer up to its ceiling.
  std::vector<Rational> points{Rational(0), d};
  for (int x = 0; x < g.clock_count(); ++x) {
    Rational next = floor_of(v[x]) + 1;
    for (; next <= g.clocks[x].ceiling + 1; next += 1) {
      Rational t = next - v[x];
      if (t > d) break;
      points.push_back(t);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!eval_constraint(c, elapse(v, points[i]))) return false;
    if (i + 1 < points.size() && !eval_constraint(c, elapse(v, (points[i] + points[i + 1]) / 2))) return false;
  }
  return true;
}

std::optional<ConcreteState> apply_move(const TimedGame& g, const ConcreteState& s, Player p, const Move& m) {
  if (m.delay < 0) return std::nullopt;
  if (m.kind == MoveKind::Relinquish) {
    if (p != Player::One || !g.relinquish) return std::nullopt;
    return s;
  }
  const auto& inv = g.locations[s.location].invariant;
  if (!holds_throughout(g, inv, s.valuation, m.delay)) return std::nullopt;
  ConcreteState next{s.location, elapse(s.valuation, m.delay)};
  if (m.kind == MoveKind::Delay) return next;
  if (m.action < 0 || m.action >= static_cast<int>(g.action_names.size()) || g.action_owner[m.action] != p)
    return std::nullopt;
  int e = g.edge_for(s.location, m.action);
  if (e < 0) return std::nullopt;
  const Edge& edge = g.edges[e];
  if (!eval_constraint(edge.guard, next.valuation)) return std::nullopt;
  for (int x : edge.resets) next.valuation[x] = 0;
  next.location = edge.target;
  if (!eval_constraint(g.locations[edge.target].invariant, next.valuation)) return std::nullopt;
  return next;
}

bool move_enabled(const TimedGame& g, const ConcreteState& s, Player p, const Move& m) {
  return apply_move(g, s, p, m).has_value();
}

std::vector<Outcome> joint_destination(const TimedGame& g, const ConcreteState& s, const Move& m1, const Move& m2) {
  auto d1 = apply_move(g, s, Player::One, m1);
  auto d2 = apply_move(g, s, Player::Two, m2);
  if (!d1) throw std::invalid_argument("illegal player-1 move");
  if (!d2 || m2.kind == MoveKind::Relinquish) throw std::invalid_argument("illegal player-2 move");
  const bool star = m1.kind == MoveKind::Relinquish;

  auto blamed_as = [&](const Move& m, Player p) {
    if (m.kind != MoveKind::Action) return p;
    int e = g.edge_for(s.location, m.action);
    return e >= 0 ? g.edges[e].blame : p;
  };

  std::vector<Outcome> out;
  auto add = [&](const ConcreteState& target, Player chosen) {
    Outcome o;
    o.state = target;
    o.chosen = chosen;
    o.delay = star ? m2.delay : std::min(m1.delay, m2.delay);
    bool bl1 = !star && m1.delay <= m2.delay && *d1 == target;
    bool bl2 = (m2.delay <= m1.delay && *d2 == target) || star;
    // blame overrides of transformed games move responsibility to the other player
    bool b1 = false, b2 = false;
    if (bl1) (blamed_as(m1, Player::One) == Player::One ? b1 : b2) = true;
    if (bl2) (blamed_as(m2, Player::Two) == Player::Two ? b2 : b1) = true;
    if (star) b2 = true;
    o.blame1 = b1;
    o.blame2 = b2;
    out.push_back(std::move(o));
  };

  if (star || m2.delay < m1.delay) {
    add(*d2, Player::Two);
  } else if (m1.delay < m2.delay) {
    add(*d1, Player::One);
  } else {
    add(*d1, Player::One);
    if (!(*d2 == *d1)) add(*d2, Player::Two);
  }
  return out;
}

ConcreteState make_state(const TimedGame& g, std::string_view location,
                         const std::vector<std::pair<std::string, Rational>>& values) {
  ConcreteState s;
  s.location = g.find_location(location);
  if (s.location < 0) throw std::invalid_argument("unknown location '" + std::string(location) + "'");
  s.valuation.assign(g.clocks.size(), Rational(0));
  for (const auto& [n, v] : values) {
    int x = g.find_clock(n);
    if (x < 0) throw std::invalid_argument("unknown clock '" + n + "'");
    s.valuation[x] = v;
  }
  return s;
}

std::string to_string(const TimedGame& g, const ConcreteState& s) {
  std::ostringstream os;
  os << g.locations.at(s.location).name;
  for (std::size_t x = 0; x < s.valuation.size(); ++x) os << " " << g.clocks[x].name << "=" << to_string(s.valuation[x]);
  return os.str();
}

}  // namespace tpg
