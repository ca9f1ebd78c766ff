#pragma once

#include "tpg/game.hpp"
#include "tpg/rational.hpp"
#include "tpg/region.hpp"
#include "tpg/solver.hpp"
#include "tpg/zone.hpp"

#include <cstdint>
#include <vector>

namespace tpg {

struct JitterParams {
  Rational jitter;
  Rational response;
};

// Valuations from which c holds throughout the next eps time units.
Zones erode(const Constraint& c, int clocks, const Rational& eps);
// Same, as a constraint; requires integral bounds (rescale first).
Constraint erode_guard(const Constraint& c, int clocks, const Rational& eps);

struct JitterGame {
  TimedGame game;
  std::int64_t scale = 1;        // lcm of the jitter and response denominators
  int z = -1;                    // index of the fresh clock
  std::vector<int> origin;       // per location: original location, copies included
  std::vector<int> via_edge;     // per location: original player-1 edge of a copy, else -1
  int base_locations = 0;        // locations 0..base_locations-1 mirror the original ones
};

JitterGame build_jitter_game(const TimedGame& g, const JitterParams& p, bool blame_overrides = true);

// Size bounds of the transformation.
struct JitterCounts {
  std::size_t locations = 0;
  std::size_t p1_edges = 0;
  std::size_t p2_edges = 0;
};
JitterCounts jitter_counts(const JitterGame& j);
JitterCounts jitter_bounds(const TimedGame& original);

Analysis solve_limit_robust(const TimedGame& g, const std::vector<Region>& seeds);
Analysis solve_limit_robust(const TimedGame& g);

struct BoundedResult {
  JitterGame jitter;
  Analysis analysis;

  // Whether the concrete state of the original game wins.
  bool wins(const ConcreteState& s) const;
  // Original regions containing some winning state of the jitter game (z = 0, base locations).
  std::vector<Region> touched_regions(const TimedGame& original) const;
};

// Maps an original state into the jitter game (rescaled, z = 0); throws on
// states that are not valid in the original game.
ConcreteState lift_state(const JitterGame& j, const ConcreteState& s);
// Region of the jitter game for a state of the original game.
Region lift_region(const JitterGame& j, const ConcreteState& s);

// seeds: original concrete states; empty means all z = 0 regions of base locations.
BoundedResult solve_bounded_robust(const TimedGame& g, const JitterParams& p, const std::vector<ConcreteState>& seeds,
                                   bool blame_overrides = true);

}  // namespace tpg
