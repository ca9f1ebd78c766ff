#include "tpg/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tpg {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

struct Constraint::Node {
  Kind kind = Kind::True;
  Cmp cmp = Cmp::Le;
  bool strict = false;
  int x = -1;
  int y = -1;
  std::int64_t k = 0;
  std::vector<Constraint> kids;
};

Constraint::Constraint() : node_(std::make_shared<Node>()) {}
Constraint::Constraint(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Constraint Constraint::truth() { return Constraint(); }

Constraint Constraint::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::False;
  return Constraint(n);
}

Constraint Constraint::atom(int clock, Cmp cmp, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("clock constraint constant must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->x = clock;
  n->cmp = cmp;
  n->k = k;
  return Constraint(n);
}

Constraint Constraint::diag(int x, int y, bool strict, std::int64_t k) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Diag;
  n->x = x;
  n->y = y;
  n->strict = strict;
  n->k = k;
  return Constraint(n);
}

Constraint Constraint::negate(Constraint c) {
  if (c.kind() == Kind::True) return falsity();
  if (c.kind() == Kind::False) return truth();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->kids.push_back(std::move(c));
  return Constraint(n);
}

Constraint Constraint::conj(std::vector<Constraint> parts) {
  std::vector<Constraint> kept;
  for (auto& p : parts) {
    if (p.kind() == Kind::True) continue;
    if (p.kind() == Kind::False) return falsity();
    kept.push_back(std::move(p));
  }
  if (kept.empty()) return truth();
  if (kept.size() == 1) return kept.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->kids = std::move(kept);
  return Constraint(n);
}

Constraint Constraint::disj(std::vector<Constraint> parts) {
  std::vector<Constraint> kept;
  for (auto& p : parts) {
    if (p.kind() == Kind::False) continue;
    if (p.kind() == Kind::True) return truth();
    kept.push_back(std::move(p));
  }
  if (kept.empty()) return falsity();
  if (kept.size() == 1) return kept.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->kids = std::move(kept);
  return Constraint(n);
}

Constraint::Kind Constraint::kind() const { return node_->kind; }
int Constraint::clock() const { return node_->x; }
int Constraint::clock2() const { return node_->y; }
Cmp Constraint::cmp() const { return node_->cmp; }
bool Constraint::strict() const { return node_->strict; }
std::int64_t Constraint::constant() const { return node_->k; }
const std::vector<Constraint>& Constraint::children() const { return node_->kids; }

bool Constraint::has_diagonal() const {
  if (kind() == Kind::Diag) return true;
  return std::any_of(children().begin(), children().end(), [](const Constraint& c) { return c.has_diagonal(); });
}

bool Constraint::evaluate(const std::function<bool(const Constraint&)>& atom_value) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom:
    case Kind::Diag: return atom_value(*this);
    case Kind::Not: return !children()[0].evaluate(atom_value);
    case Kind::And:
      for (const auto& c : children())
        if (!c.evaluate(atom_value)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : children())
        if (c.evaluate(atom_value)) return true;
      return false;
  }
  return false;
}

bool operator==(const Constraint& a, const Constraint& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.cmp == y.cmp && x.strict == y.strict && x.x == y.x && x.y == y.y && x.k == y.k &&
         x.kids == y.kids;
}

bool eval_constraint(const Constraint& c, const Valuation& v) {
  return c.evaluate([&](const Constraint& a) {
    auto need = static_cast<std::size_t>(std::max(a.clock(), a.clock2()));
    if (a.clock() < 0 || need >= v.size()) throw std::out_of_range("valuation is missing a clock");
    if (a.kind() == Constraint::Kind::Diag) {
      Rational d = v[a.clock()] - v[a.clock2()];
      return a.strict() ? d < a.constant() : d <= a.constant();
    }
    const Rational& x = v[a.clock()];
    Rational k(static_cast<long>(a.constant()));
    switch (a.cmp()) {
      case Cmp::Le: return x <= k;
      case Cmp::Lt: return x < k;
      case Cmp::Ge: return x >= k;
      case Cmp::Gt: return x > k;
      case Cmp::Eq: return x == k;
    }
    return false;
  });
}

Constraint normalize(const Constraint& c) {
  using K = Constraint::Kind;
  switch (c.kind()) {
    case K::True: return c;
    case K::False: return Constraint::negate(Constraint::truth());
    case K::Diag: return c;
    case K::Atom:
      switch (c.cmp()) {
        case Cmp::Le:
        case Cmp::Ge: return c;
        case Cmp::Lt: return Constraint::negate(Constraint::atom(c.clock(), Cmp::Ge, c.constant()));
        case Cmp::Gt: return Constraint::negate(Constraint::atom(c.clock(), Cmp::Le, c.constant()));
        case Cmp::Eq:
          return Constraint::conj(Constraint::atom(c.clock(), Cmp::Le, c.constant()),
                                  Constraint::atom(c.clock(), Cmp::Ge, c.constant()));
      }
      return c;
    case K::Not: return Constraint::negate(normalize(c.children()[0]));
    case K::And: {
      std::vector<Constraint> parts;
      for (const auto& k : c.children()) parts.push_back(normalize(k));
      return Constraint::conj(std::move(parts));
    }
    case K::Or: {
      std::vector<Constraint> parts;
      for (const auto& k : c.children()) parts.push_back(Constraint::negate(normalize(k)));
      return Constraint::negate(Constraint::conj(std::move(parts)));
    }
  }
  return c;
}

namespace {

template <class F>
Constraint rebuild(const Constraint& c, const F& leaf) {
  using K = Constraint::Kind;
  switch (c.kind()) {
    case K::True:
    case K::False: return c;
    case K::Atom:
    case K::Diag: return leaf(c);
    case K::Not: return Constraint::negate(rebuild(c.children()[0], leaf));
    case K::And:
    case K::Or: {
      std::vector<Constraint> parts;
      for (const auto& k : c.children()) parts.push_back(rebuild(k, leaf));
      return c.kind() == K::And ? Constraint::conj(std::move(parts)) : Constraint::disj(std::move(parts));
    }
  }
  return c;
}

}  // namespace

Constraint scale(const Constraint& c, std::int64_t factor) {
  return rebuild(c, [&](const Constraint& a) {
    if (a.kind() == Constraint::Kind::Diag)
      return Constraint::diag(a.clock(), a.clock2(), a.strict(), a.constant() * factor);
    return Constraint::atom(a.clock(), a.cmp(), a.constant() * factor);
  });
}

Constraint remap_clocks(const Constraint& c, const std::vector<int>& mapping) {
  return rebuild(c, [&](const Constraint& a) {
    if (a.kind() == Constraint::Kind::Diag)
      return Constraint::diag(mapping.at(a.clock()), mapping.at(a.clock2()), a.strict(), a.constant());
    return Constraint::atom(mapping.at(a.clock()), a.cmp(), a.constant());
  });
}

void collect_constants(const Constraint& c, std::vector<std::int64_t>& max_const) {
  auto bump = [&](int x, std::int64_t k) {
    if (x < 0) return;
    if (static_cast<std::size_t>(x) >= max_const.size()) max_const.resize(x + 1, 0);
    max_const[x] = std::max(max_const[x], k);
  };
  switch (c.kind()) {
    case Constraint::Kind::Atom: bump(c.clock(), c.constant()); break;
    case Constraint::Kind::Diag:
      bump(c.clock(), std::abs(c.constant()));
      bump(c.clock2(), std::abs(c.constant()));
      break;
    default:
      for (const auto& k : c.children()) collect_constants(k, max_const);
  }
}

namespace {

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Le: return "<=";
    case Cmp::Lt: return "<";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
    case Cmp::Eq: return "==";
  }
  return "?";
}

// precedence: 0 = or, 1 = and, 2 = unary/atom
void print(std::ostream& os, const Constraint& c, const std::vector<std::string>& names, int ctx) {
  using K = Constraint::Kind;
  auto name = [&](int x) { return x >= 0 && static_cast<std::size_t>(x) < names.size() ? names[x] : "c" + std::to_string(x); };
  switch (c.kind()) {
    case K::True: os << "true"; return;
    case K::False: os << "!true"; return;
    case K::Atom: os << name(c.clock()) << cmp_text(c.cmp()) << c.constant(); return;
    case K::Diag:
      os << name(c.clock()) << "-" << name(c.clock2()) << (c.strict() ? "<" : "<=") << c.constant();
      return;
    case K::Not:
      os << "!";
      print(os, c.children()[0], names, 2);
      return;
    case K::And:
    case K::Or: {
      int mine = c.kind() == K::And ? 1 : 0;
      bool paren = ctx > mine;
      if (paren) os << "(";
      const char* sep = mine == 1 ? " && " : " || ";
      for (std::size_t i = 0; i < c.children().size(); ++i) {
        if (i) os << sep;
        print(os, c.children()[i], names, mine + 1);
      }
      if (paren) os << ")";
      return;
    }
  }
}

class ConstraintParser {
 public:
  ConstraintParser(std::string_view text, const std::function<int(std::string_view)>& lookup, int line, int offset)
      : s_(text), lookup_(lookup), line_(line), offset_(offset) {}

  Constraint parse() {
    Constraint c = parse_or();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Constraint parse_or() {
    std::vector<Constraint> parts{parse_and()};
    while (eat("||")) parts.push_back(parse_and());
    return parts.size() == 1 ? parts[0] : Constraint::disj(std::move(parts));
  }

  Constraint parse_and() {
    std::vector<Constraint> parts{parse_unary()};
    while (eat("&&")) parts.push_back(parse_unary());
    return parts.size() == 1 ? parts[0] : Constraint::conj(std::move(parts));
  }

  Constraint parse_unary() {
    skip_ws();
    if (eat("!")) return Constraint::negate(parse_unary());
    if (eat("(")) {
      Constraint c = parse_or();
      if (!eat(")")) fail("expected ')'");
      return c;
    }
    std::string id = ident();
    if (id.empty()) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of constraint");
    if (id == "true") return Constraint::truth();
    int x = lookup_(id);
    if (x < 0) fail("undeclared clock '" + id + "'");
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') fail("diagonal constraints are not supported");
    Cmp cmp;
    if (eat("<=")) cmp = Cmp::Le;
    else if (eat(">=")) cmp = Cmp::Ge;
    else if (eat("==")) cmp = Cmp::Eq;
    else if (eat("<")) cmp = Cmp::Lt;
    else if (eat(">")) cmp = Cmp::Gt;
    else fail("expected a comparison after clock '" + id + "'");
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer constant");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 12) fail("constant too large");
    return Constraint::atom(x, cmp, std::stoll(digits));
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  const std::function<int(std::string_view)>& lookup_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Constraint& c, const std::vector<std::string>& clock_names) {
  std::ostringstream os;
  print(os, c, clock_names, 0);
  return os.str();
}

Constraint parse_constraint(std::string_view text, const std::function<int(std::string_view)>& lookup, int line,
                            int column_offset) {
  return ConstraintParser(text, lookup, line, column_offset).parse();
}

}  // namespace tpg
