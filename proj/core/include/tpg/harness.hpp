#pragma once

#include "tpg/game.hpp"
#include "tpg/parity_game.hpp"
#include "tpg/region.hpp"
#include "tpg/solver.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tpg {

struct RandomGameSpec {
  std::uint64_t seed = 0;
  int max_locations = 4;
  int max_clocks = 2;
  int max_ceiling = 3;
  int max_edges_per_player = 4;
  int max_order = 3;
};

// Deterministic per seed; the result passes TimedGame::finalize and carries a
// query state at location 0 with all clocks 0.
TimedGame random_timed_game(const RandomGameSpec& spec);

// At most max_states states, priorities below max_priority, out-degree 1..3.
FiniteParityGame random_parity_game(std::uint64_t seed, int max_states = 8, int max_priority = 3);

// Exhaustive search over memoryless strategy pairs; at most 10 states.
Solution brute_force_parity(const FiniteParityGame& g);

struct SamplingReport {
  std::size_t trials = 0;
  std::size_t divergences = 0;
  std::size_t point_states = 0;   // trials starting in a region with an integral clock
  std::size_t ties = 0;           // trials with equal delays
  std::size_t relinquished = 0;
  std::vector<std::string> messages;  // first few divergences
};

// Replays random concrete joint moves and compares them with the region-level
// move classes: enabledness, landing regions and which player's move wins.
SamplingReport sample_region_semantics(const TimedGame& g, std::size_t trials, std::uint64_t seed);

struct CrossCheckReport {
  bool ok = true;
  std::size_t regions = 0;
  std::size_t af_states = 0;
  std::size_t af_star_states = 0;
  bool spm_used = false;  // arenas above the limit are solved by Zielonka only
  std::string detail;
};

// Solves A^f and (A^f)* with both solvers (SPM only up to spm_limit states)
// and compares the region projections.
CrossCheckReport cross_check(const TimedGame& g, Mode mode = Mode::Exact, std::size_t spm_limit = 20000);
CrossCheckReport cross_check(const TimedGame& g, Mode mode, const std::vector<Region>& seeds,
                             std::size_t spm_limit = 20000);

// Greedily drops edges, then locations, while `fails` keeps returning true.
TimedGame shrink_game(const TimedGame& g, const std::function<bool(const TimedGame&)>& fails);
TimedGame remove_location(const TimedGame& g, int loc);

}  // namespace tpg
