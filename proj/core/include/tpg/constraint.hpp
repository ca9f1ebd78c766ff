#pragma once

#include "tpg/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tpg {

using Valuation = std::vector<Rational>;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

enum class Cmp : std::uint8_t { Le, Lt, Ge, Gt, Eq };

// Immutable clock constraint tree. Atoms compare one clock with a nonnegative
// integer; Diag atoms (x - y <= k, x - y < k) only arise from guard erosion.
class Constraint {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, Diag, Not, And, Or };

  Constraint();  // true

  static Constraint truth();
  static Constraint falsity();
  static Constraint atom(int clock, Cmp cmp, std::int64_t k);
  static Constraint diag(int x, int y, bool strict, std::int64_t k);
  static Constraint negate(Constraint c);
  static Constraint conj(std::vector<Constraint> parts);
  static Constraint disj(std::vector<Constraint> parts);
  static Constraint conj(Constraint a, Constraint b) { return conj(std::vector<Constraint>{std::move(a), std::move(b)}); }
  static Constraint disj(Constraint a, Constraint b) { return disj(std::vector<Constraint>{std::move(a), std::move(b)}); }

  Kind kind() const;
  int clock() const;   // Atom, Diag (minuend)
  int clock2() const;  // Diag (subtrahend)
  Cmp cmp() const;     // Atom
  bool strict() const; // Diag
  std::int64_t constant() const;
  const std::vector<Constraint>& children() const;

  bool is_true() const { return kind() == Kind::True; }
  bool has_diagonal() const;

  // Evaluates with user-supplied atom semantics.
  bool evaluate(const std::function<bool(const Constraint&)>& atom_value) const;

  friend bool operator==(const Constraint& a, const Constraint& b);

 private:
  struct Node;
  explicit Constraint(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

bool eval_constraint(const Constraint& c, const Valuation& v);

// Rewrites into the core grammar {<=, >=, !, &&, true}.
Constraint normalize(const Constraint& c);
Constraint scale(const Constraint& c, std::int64_t factor);
Constraint remap_clocks(const Constraint& c, const std::vector<int>& mapping);

// max_const[x] = largest constant compared with clock x (diagonals included as |k|).
void collect_constants(const Constraint& c, std::vector<std::int64_t>& max_const);

std::string to_string(const Constraint& c, const std::vector<std::string>& clock_names);

// `lookup` maps a clock name to its index or returns -1.
Constraint parse_constraint(std::string_view text, const std::function<int(std::string_view)>& lookup,
                            int line = 0, int column_offset = 0);

}  // namespace tpg
