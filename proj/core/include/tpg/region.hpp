#pragma once

#include "tpg/constraint.hpp"
#include "tpg/game.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace tpg {

constexpr int kMaxClocks = 8;

// Clocks a region ranges over. `wrap` marks the fictitious global clock that
// returns to 0 whenever it reaches 1 (ceiling 1, never above its ceiling).
struct ClockSpace {
  std::vector<int> ceiling;
  std::vector<std::string> names;
  int wrap = -1;

  int size() const { return static_cast<int>(ceiling.size()); }
};

ClockSpace clock_space(const TimedGame& g);
ClockSpace ext_clock_space(const TimedGame& g);  // game clocks followed by z

// Canonical region: integer parts h, and per clock its fractional cell:
// -1 above ceiling, 0 integral, 1..ncells ordered by increasing fraction.
struct Region {
  std::uint32_t loc = 0;
  std::uint8_t nclocks = 0;
  std::uint8_t ncells = 0;
  std::array<std::uint16_t, kMaxClocks> h{};
  std::array<std::int8_t, kMaxClocks> cell{};

  bool above(int x) const { return cell[x] < 0; }
  bool integral(int x) const { return cell[x] == 0; }

  friend bool operator==(const Region& a, const Region& b) {
    return a.loc == b.loc && a.nclocks == b.nclocks && a.ncells == b.ncells && a.h == b.h && a.cell == b.cell;
  }
  friend bool operator<(const Region& a, const Region& b);
};

struct RegionHash {
  std::size_t operator()(const Region& r) const noexcept;
};

Region region_of(const ClockSpace& cs, int loc, const Valuation& v);
Region region_of(const TimedGame& g, const ConcreteState& s);

struct TimeStep {
  Region region;
  bool wrapped = false;    // the wrapping clock reached 1
  bool absorbing = false;  // no clock can change any more
};

TimeStep time_successor(const ClockSpace& cs, const Region& r);
Region time_successor(const TimedGame& g, const Region& r);

Region reset_region(const Region& r, const std::vector<int>& clocks);
Region with_location(Region r, int loc);
void canonicalize(Region& r);

// Throws std::invalid_argument when a constant exceeds the clock ceiling.
bool region_satisfies(const ClockSpace& cs, const Region& r, const Constraint& c);
bool region_satisfies(const TimedGame& g, const Region& r, const Constraint& c);

std::vector<Region> enumerate_regions(const TimedGame& g);
std::vector<Region> succr(const ClockSpace& cs, const Region& r, int j);

// Deterministic member: cell i gets fraction i/(ncells+2), above-ceiling clocks c+1/2.
Valuation representative(const ClockSpace& cs, const Region& r);
// No clock at or below its ceiling has an integral value.
bool is_open(const Region& r);
// Drops clocks with index >= n.
Region project(const Region& r, int n);
// Adds a clock with value 0 at index r.nclocks.
Region extend_zero(const Region& r);

std::string to_string(const ClockSpace& cs, const Region& r, const std::vector<std::string>& locations);
std::string to_string(const TimedGame& g, const Region& r);

}  // namespace tpg
