#pragma once

#include "tpg/game.hpp"
#include "tpg/region.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tpg {

enum class Mode : std::uint8_t { Exact, LimitRobust };

// Region of the enlarged structure: base ranges over the game clocks plus the
// wrapping clock z (last index).
struct ExtRegion {
  Region base;
  bool tick = false;
  bool tbl1 = false;
  bool rb1 = true;  // meaningful in LimitRobust mode only
  std::uint8_t p = 0;

  friend bool operator==(const ExtRegion&, const ExtRegion&) = default;
};

struct ExtRegionHash {
  std::size_t operator()(const ExtRegion& r) const noexcept;
};

constexpr std::int16_t kPureDelay = -1;

// Symbolic move class: delay into the j-th time successor, then take `action`
// (kPureDelay for the pure time move of the owner).
struct SymMove {
  std::uint32_t target = 0;
  std::int16_t action = kPureDelay;
  std::uint8_t j = 0;
  Player owner = Player::One;
};

struct MoveTarget {
  ExtRegion target;
  std::int16_t action = kPureDelay;
  std::uint8_t j = 0;
  Player owner = Player::One;
};

int ext_parity(const ExtRegion& r, Mode mode);
ExtRegion seed_region(const Region& base);  // z = 0, tick = tbl1 = false, p = 0, rb1 = true

// Enumerates the 3-region move classes of both players from one ExtRegion.
class MoveGenerator {
 public:
  MoveGenerator(const TimedGame& g, Mode mode);

  std::vector<MoveTarget> moves(const ExtRegion& r) const;
  // Regions r_0 .. r_k of the time-successor chain that stay inside the invariant (k <= 2).
  std::vector<Region> chain(const Region& base) const;

  const ClockSpace& space() const { return space_; }
  Mode mode() const { return mode_; }

 private:
  const TimedGame& game_;
  ClockSpace space_;
  Mode mode_;
};

class ExtGraph {
 public:
  TimedGame game;
  Mode mode = Mode::Exact;
  ClockSpace space;
  std::vector<ExtRegion> nodes;
  std::vector<std::uint32_t> offset;  // moves of node i: [offset[i], offset[i+1])
  std::vector<SymMove> moves;
  std::vector<std::uint8_t> max_j;    // largest j with a valid time successor
  std::vector<std::uint32_t> seeds;

  std::size_t size() const { return nodes.size(); }
  std::span<const SymMove> moves_of(std::uint32_t n) const {
    return {moves.data() + offset[n], moves.data() + offset[n + 1]};
  }
  int priority(std::uint32_t n) const { return ext_parity(nodes[n], mode); }
  int parity_order() const { return game.order() + 2; }
  // Index of r or -1.
  std::int64_t find(const ExtRegion& r) const;
  std::string label(std::uint32_t n) const;

  std::unordered_map<ExtRegion, std::uint32_t, ExtRegionHash> index;
};

ExtGraph build_ext_region_graph(const TimedGame& g, Mode mode, const std::vector<Region>& seeds);
std::string to_string(const ExtGraph& graph, const ExtRegion& r);
std::string to_dot(const ExtGraph& graph);

}  // namespace tpg
