#pragma once

#include "tpg/enlarged.hpp"
#include "tpg/parity_game.hpp"
#include "tpg/region.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tpg {

struct Solution {
  std::vector<std::uint8_t> winner;    // 1 or 2 per state
  std::vector<std::int64_t> strategy;  // successor chosen by the owner on its own winning states, else -1

  bool win1(std::uint32_t v) const { return winner[v] == 1; }
  std::vector<std::uint8_t> win1_flags() const;
  friend bool operator==(const Solution&, const Solution&) = default;
};

Solution solve_zielonka(const FiniteParityGame& g);
Solution solve_spm(const FiniteParityGame& g);

// Checks that both strategies are closed in their winning sets and that every
// cycle compatible with a strategy has a winning max priority. Returns an
// empty string when sound, otherwise a description of the violation.
std::string check_solution(const FiniteParityGame& g, const Solution& s);

struct RegionChoice {
  bool relinquish = false;
  int j = 0;
  int action = kPureDelay;  // kPureDelay: pure time move
  friend bool operator==(const RegionChoice&, const RegionChoice&) = default;
};

struct RegionStrategy {
  std::vector<std::optional<RegionChoice>> choice;  // per ExtGraph node, set on player-1 winning nodes
};

// Requires an (A^f)* game with stage tags.
RegionStrategy extract_region_strategy(const Solution& sol, const FiniteParityGame& game, const ExtGraph& graph);

struct SolveOptions {
  bool verify_with_spm = true;
  std::size_t spm_limit = 20000;  // states; larger arenas are solved by Zielonka alone
};

struct Analysis {
  ExtGraph graph;
  FiniteParityGame arena;
  Solution solution;
  std::vector<std::uint8_t> region_win;  // per ExtGraph node (entry state winning)
  RegionStrategy strategy;
  std::vector<Region> seeds;

  // Whether the seed <base, z=0, tick=false, tbl1=false, p=0 (, rb1=true)> wins.
  bool wins(const Region& base) const;
  std::vector<Region> winning_regions() const;  // winning seeds, sorted
  std::optional<RegionChoice> choice_at(const Region& base) const;
};

// All regions of the game plus the regions of its query states.
std::vector<Region> default_seeds(const TimedGame& g);
Analysis analyze(const TimedGame& g, Mode mode, const std::vector<Region>& seeds, const SolveOptions& opts = {});
Analysis analyze(const TimedGame& g, Mode mode, const SolveOptions& opts = {});

struct Receptiveness {
  bool player1 = false;
  bool player2 = false;
};

// Player roles swapped, parity dropped, relinquishing disabled.
TimedGame swap_roles(const TimedGame& g);
Receptiveness check_receptive(const TimedGame& g);

}  // namespace tpg
