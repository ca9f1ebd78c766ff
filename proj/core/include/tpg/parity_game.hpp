#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tpg {

// Provenance of a finite state.
enum class Stage : std::uint8_t {
  Plain,        // no provenance (random or imported games)
  Choose1,      // A^f  <R,1>
  Respond2,     // A^f  <R,j,a,2>, action == kRelinquishTag for the relinquishing move
  Entry,        // (A^f)*  <R,1_a>
  Relinquished, // (A^f)*  <R,2>
  Block,        // (A^f)*  <R,j,2>
  Commit,       // (A^f)*  <R,j,1_c>
  Dummy,        // (A^f)*  <R,1_c^dum>, removed by eliminate_dummies
};

constexpr std::int16_t kRelinquishTag = -2;

struct StateTag {
  Stage stage = Stage::Plain;
  std::uint32_t region = 0;
  std::int8_t j = -1;
  std::int16_t action = -1;
};

// Turn-based parity game, max-parity convention: player 1 (even) wins a play
// iff the largest priority seen infinitely often is even.
struct FiniteParityGame {
  std::vector<std::uint8_t> owner;  // 1 or 2
  std::vector<std::uint32_t> priority;
  std::vector<StateTag> tag;
  std::vector<std::string> label;  // optional, empty or one per state
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> succ;

  std::size_t size() const { return owner.size(); }
  std::size_t edge_count() const { return succ.size(); }
  const std::uint32_t* succ_begin(std::uint32_t v) const { return succ.data() + offset[v]; }
  const std::uint32_t* succ_end(std::uint32_t v) const { return succ.data() + offset[v + 1]; }
  std::uint32_t max_priority() const;
  bool total() const;
};

// Incremental builder; successor lists are sorted and deduplicated on finish.
class ParityGameBuilder {
 public:
  std::uint32_t add_state(std::uint8_t owner, std::uint32_t priority, StateTag tag = {});
  void add_edge(std::uint32_t from, std::uint32_t to);
  void set_label(std::uint32_t v, std::string text);
  FiniteParityGame finish();

 private:
  FiniteParityGame g_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

// Strongly connected components, successors before predecessors (sink components first).
std::vector<std::vector<std::uint32_t>> strongly_connected_components(const FiniteParityGame& g);

// PGSolver format: owner 0 is player 1 (even), owner 1 is player 2 (odd).
std::string to_pgsolver(const FiniteParityGame& g);
FiniteParityGame parse_pgsolver(std::string_view text);

}  // namespace tpg
