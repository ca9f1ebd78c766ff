#include "tpg/zone.hpp"

#include <sstream>
#include <stdexcept>

namespace tpg {

bool operator<(const Bound& a, const Bound& b) {
  if (a.inf) return false;
  if (b.inf) return true;
  if (a.c != b.c) return a.c < b.c;
  return a.strict && !b.strict;
}

Bound operator+(const Bound& a, const Bound& b) {
  if (a.inf || b.inf) return Bound::infinity();
  return Bound{a.c + b.c, a.strict || b.strict, false};
}

namespace {

bool le(const Bound& a, const Bound& b) { return !(b < a); }

}  // namespace

Dbm::Dbm(int clocks) : n_(clocks + 1), m_(static_cast<std::size_t>(n_ * n_)) {
  for (int i = 0; i < n_; ++i) ref(i, i) = Bound::le(0);
  for (int i = 1; i < n_; ++i) ref(0, i) = Bound::le(0);
}

void Dbm::constrain(int i, int j, const Bound& b) {
  if (b < at(i, j)) ref(i, j) = b;
}

void Dbm::canonicalize() {
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i) {
      if (at(i, k).inf) continue;
      for (int j = 0; j < n_; ++j) {
        Bound s = at(i, k) + at(k, j);
        if (s < at(i, j)) ref(i, j) = s;
      }
    }
}

bool Dbm::empty() const {
  for (int i = 0; i < n_; ++i)
    if (at(i, i) < Bound::le(0)) return true;
  return false;
}

bool Dbm::includes(const Dbm& b) const {
  if (b.empty()) return true;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!le(b.at(i, j), at(i, j))) return false;
  return true;
}

bool Dbm::contains(const Valuation& v) const {
  auto val = [&](int i) { return i == 0 ? Rational(0) : v.at(i - 1); };
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const Bound& b = at(i, j);
      if (b.inf) continue;
      Rational d = val(i) - val(j);
      if (b.strict ? !(d < b.c) : !(d <= b.c)) return false;
    }
  return true;
}

Dbm Dbm::down(const Rational& eps) const {
  Dbm r = *this;
  // lower bounds x_i >= l become x_i >= l - eps; upper and diagonal bounds stay
  for (int i = 1; i < n_; ++i) {
    const Bound& b = at(0, i);
    if (!b.inf) r.ref(0, i) = Bound{b.c + eps, b.strict, false};
    r.constrain(0, i, Bound::le(0));
  }
  r.canonicalize();
  return r;
}

std::vector<std::pair<std::pair<int, int>, Bound>> Dbm::minimal_constraints() const {
  Dbm work = *this;
  const Dbm base(n_ - 1);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j || work.at(i, j).inf || !(work.at(i, j) < base.at(i, j))) continue;
      Dbm trial = work;
      trial.ref(i, j) = base.at(i, j);
      trial.canonicalize();
      if (trial == *this) work.ref(i, j) = base.at(i, j);
    }
  std::vector<std::pair<std::pair<int, int>, Bound>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && !work.at(i, j).inf && work.at(i, j) < base.at(i, j)) out.push_back({{i, j}, work.at(i, j)});
  return out;
}

namespace {

Zones normalize_zones(Zones z) {
  Zones out;
  for (auto& d : z) {
    d.canonicalize();
    if (d.empty()) continue;
    bool covered = false;
    for (const auto& o : out)
      if (o.includes(d)) covered = true;
    if (covered) continue;
    Zones kept;
    for (auto& o : out)
      if (!d.includes(o)) kept.push_back(std::move(o));
    kept.push_back(std::move(d));
    out = std::move(kept);
  }
  return out;
}

Dbm single(int clocks, int i, int j, const Bound& b) {
  Dbm d(clocks);
  d.constrain(i, j, b);
  d.canonicalize();
  return d;
}

// Zones of an atom (or its negation): clock x is DBM index x+1.
Zones atom_zones(const Constraint& c, bool neg, int clocks) {
  const int x = c.clock() + 1;
  const Rational k(static_cast<long>(c.constant()));
  const Rational mk = -k;
  if (c.kind() == Constraint::Kind::Diag) {
    const int y = c.clock2() + 1;
    if (!neg) return {single(clocks, x, y, Bound{k, c.strict(), false})};
    // not (x - y <= k)  is  y - x < -k
    return {single(clocks, y, x, Bound{mk, !c.strict(), false})};
  }
  auto upper = [&](bool strict) { return single(clocks, x, 0, Bound{k, strict, false}); };
  auto lower = [&](bool strict) { return single(clocks, 0, x, Bound{mk, strict, false}); };
  switch (c.cmp()) {
    case Cmp::Le: return {neg ? lower(true) : upper(false)};
    case Cmp::Lt: return {neg ? lower(false) : upper(true)};
    case Cmp::Ge: return {neg ? upper(true) : lower(false)};
    case Cmp::Gt: return {neg ? upper(false) : lower(true)};
    case Cmp::Eq:
      if (neg) return normalize_zones({upper(true), lower(true)});
      return intersect({upper(false)}, {lower(false)});
  }
  throw std::logic_error("unknown comparison");
}

Zones zones_rec(const Constraint& c, bool neg, int clocks) {
  using K = Constraint::Kind;
  switch (c.kind()) {
    case K::True: return neg ? Zones{} : Zones{Dbm(clocks)};
    case K::False: return neg ? Zones{Dbm(clocks)} : Zones{};
    case K::Atom:
    case K::Diag: return atom_zones(c, neg, clocks);
    case K::Not: return zones_rec(c.children().front(), !neg, clocks);
    case K::And:
    case K::Or: {
      const bool meet = (c.kind() == K::And) != neg;
      Zones acc = meet ? Zones{Dbm(clocks)} : Zones{};
      for (const auto& ch : c.children()) {
        Zones part = zones_rec(ch, neg, clocks);
        if (meet) {
          acc = intersect(acc, part);
        } else {
          acc.insert(acc.end(), part.begin(), part.end());
          acc = normalize_zones(std::move(acc));
        }
      }
      return acc;
    }
  }
  throw std::logic_error("unknown constraint kind");
}

}  // namespace

Zones zones_of(const Constraint& c, int clocks) { return zones_rec(c, false, clocks); }

Zones intersect(const Zones& a, const Zones& b) {
  Zones out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Dbm d = x;
      for (int i = 0; i <= d.clocks(); ++i)
        for (int j = 0; j <= d.clocks(); ++j) d.constrain(i, j, y.at(i, j));
      out.push_back(std::move(d));
    }
  return normalize_zones(std::move(out));
}

Zones complement(const Zones& z, int clocks) {
  Zones acc{Dbm(clocks)};
  for (const auto& d : z) {
    // the complement of one zone is the union of its negated constraints
    Zones neg;
    for (const auto& [ij, b] : d.minimal_constraints())
      neg.push_back(single(clocks, ij.second, ij.first, Bound{-b.c, !b.strict, false}));
    acc = intersect(acc, normalize_zones(std::move(neg)));
    if (acc.empty()) break;
  }
  return acc;
}

bool zones_contain(const Zones& z, const Valuation& v) {
  for (const auto& d : z)
    if (d.contains(v)) return true;
  return false;
}

Constraint zones_to_constraint(const Zones& z) {
  std::vector<Constraint> parts;
  for (const auto& d : z) {
    std::vector<Constraint> atoms;
    for (const auto& [ij, b] : d.minimal_constraints()) {
      if (!is_integer(b.c)) throw std::invalid_argument("zone bound " + to_string(b.c) + " is not an integer");
      const std::int64_t k = to_int64(b.c);
      const auto [i, j] = ij;
      if (j == 0) {
        atoms.push_back(Constraint::atom(i - 1, b.strict ? Cmp::Lt : Cmp::Le, k));
      } else if (i == 0) {
        atoms.push_back(Constraint::atom(j - 1, b.strict ? Cmp::Gt : Cmp::Ge, -k));
      } else {
        atoms.push_back(Constraint::diag(i - 1, j - 1, b.strict, k));
      }
    }
    parts.push_back(atoms.empty() ? Constraint::truth() : Constraint::conj(std::move(atoms)));
  }
  if (parts.empty()) return Constraint::falsity();
  return parts.size() == 1 ? parts.front() : Constraint::disj(std::move(parts));
}

std::string to_string(const Zones& z, const std::vector<std::string>& clock_names) {
  return to_string(zones_to_constraint(z), clock_names);
}

}  // namespace tpg
