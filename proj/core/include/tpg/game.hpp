#pragma once

#include "tpg/constraint.hpp"
#include "tpg/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tpg {

enum class Player : std::uint8_t { One = 1, Two = 2 };

inline Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }

struct Clock {
  std::string name;
  int ceiling = 1;
};

struct Location {
  std::string name;
  Constraint invariant;
  int parity = 0;
};

struct Edge {
  int source = 0;
  Player owner = Player::One;
  int action = 0;
  Constraint guard;
  int target = 0;
  std::vector<int> resets;  // sorted clock indices
  Player blame = Player::One;
};

struct ConcreteState {
  int location = 0;
  Valuation valuation;
  friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

struct QueryState {
  std::string label;
  ConcreteState state;
};

class TimedGame {
 public:
  std::string name = "game";
  std::vector<Clock> clocks;
  std::vector<Location> locations;
  std::vector<std::string> action_names;
  std::vector<Player> action_owner;
  std::vector<Edge> edges;
  std::vector<QueryState> queries;
  bool relinquish = true;  // player 1 may play the relinquishing move

  // Validates the type invariants, raises ceilings to dominate constants and
  // rebuilds lookup tables. Throws std::invalid_argument on violations.
  void finalize();

  int order() const;  // d = 1 + max parity
  int clock_count() const { return static_cast<int>(clocks.size()); }
  int find_clock(std::string_view name) const;
  int find_location(std::string_view name) const;
  int find_action(std::string_view name) const;
  int add_action(const std::string& name, Player owner);  // returns existing id when present
  const std::vector<int>& edges_from(int location) const { return out_edges_.at(location); }
  // Edge id for (source, action) or -1.
  int edge_for(int source, int action) const;
  std::vector<std::string> clock_names() const;
  std::vector<std::string> location_names() const;

 private:
  std::vector<std::vector<int>> out_edges_;
};

enum class MoveKind : std::uint8_t { Action, Delay, Relinquish };

struct Move {
  Rational delay;
  MoveKind kind = MoveKind::Delay;
  int action = -1;

  static Move act(Rational d, int a) { return Move{std::move(d), MoveKind::Action, a}; }
  static Move wait(Rational d) { return Move{std::move(d), MoveKind::Delay, -1}; }
  static Move relinquish(Rational d = 0) { return Move{std::move(d), MoveKind::Relinquish, -1}; }
};

struct Outcome {
  ConcreteState state;
  Player chosen = Player::One;  // whose move determined the successor
  bool blame1 = false;
  bool blame2 = false;
  Rational delay;
};

TimedGame parse_game(std::string_view text);
TimedGame load_game(const std::string& path);
std::string serialize_game(const TimedGame& g);

Valuation elapse(const Valuation& v, const Rational& d);
bool valid_state(const TimedGame& g, const ConcreteState& s);
// True iff c holds at v + d' for every d' in [0, d].
bool holds_throughout(const TimedGame& g, const Constraint& c, const Valuation& v, const Rational& d);

bool move_enabled(const TimedGame& g, const ConcreteState& s, Player p, const Move& m);
// Successor of a single move; nullopt when the move is not enabled.
std::optional<ConcreteState> apply_move(const TimedGame& g, const ConcreteState& s, Player p, const Move& m);
std::vector<Outcome> joint_destination(const TimedGame& g, const ConcreteState& s, const Move& m1, const Move& m2);

ConcreteState make_state(const TimedGame& g, std::string_view location,
                         const std::vector<std::pair<std::string, Rational>>& values);
std::string to_string(const TimedGame& g, const ConcreteState& s);

}  // namespace tpg
