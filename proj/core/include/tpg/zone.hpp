#pragma once

#include "tpg/constraint.hpp"
#include "tpg/rational.hpp"

#include <string>
#include <vector>

namespace tpg {

// Upper bound on a clock difference: (c, strict) or +infinity.
struct Bound {
  Rational c;
  bool strict = false;
  bool inf = true;

  static Bound le(Rational v) { return Bound{std::move(v), false, false}; }
  static Bound lt(Rational v) { return Bound{std::move(v), true, false}; }
  static Bound infinity() { return Bound{}; }

  friend bool operator==(const Bound&, const Bound&) = default;
};

bool operator<(const Bound& a, const Bound& b);
Bound operator+(const Bound& a, const Bound& b);

// Difference-bound matrix over clocks 1..n with reference clock 0:
// at(i, j) bounds x_i - x_j. Always kept inside the nonnegative orthant.
class Dbm {
 public:
  explicit Dbm(int clocks = 0);  // all nonnegative valuations

  int clocks() const { return n_ - 1; }
  const Bound& at(int i, int j) const { return m_[i * n_ + j]; }

  // Intersects with x_i - x_j (<|<=) c; indices include the reference 0.
  void constrain(int i, int j, const Bound& b);
  void canonicalize();
  bool empty() const;
  // b included in *this (both canonical).
  bool includes(const Dbm& b) const;
  bool contains(const Valuation& v) const;  // v indexed by clock 0..n-1
  // Valuations from which some delay in [0, eps] lands in the zone.
  Dbm down(const Rational& eps) const;

  // Nontrivial finite entries not implied by the others.
  std::vector<std::pair<std::pair<int, int>, Bound>> minimal_constraints() const;

  friend bool operator==(const Dbm&, const Dbm&) = default;

 private:
  Bound& ref(int i, int j) { return m_[i * n_ + j]; }
  int n_;
  std::vector<Bound> m_;
};

using Zones = std::vector<Dbm>;

Zones zones_of(const Constraint& c, int clocks);
Zones complement(const Zones& z, int clocks);
Zones intersect(const Zones& a, const Zones& b);
bool zones_contain(const Zones& z, const Valuation& v);
// Integer bounds only; throws std::invalid_argument otherwise.
Constraint zones_to_constraint(const Zones& z);
std::string to_string(const Zones& z, const std::vector<std::string>& clock_names);

}  // namespace tpg
