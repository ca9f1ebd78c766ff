#pragma once

#include "tpg/enlarged.hpp"
#include "tpg/parity_game.hpp"

#include <cstdint>
#include <vector>

namespace tpg {

// Bipartite reference game: <R,1> choose (j, action), <R,j,a,2> block or allow.
FiniteParityGame build_af(const ExtGraph& graph);
// Linear game with stages 1_a, 2, (j,2), (j,1_c). With keep_dummies every
// move lands in a <R',1_c^dum> state first, giving the strict (121) stage
// pattern; otherwise the dummies are eliminated.
FiniteParityGame build_af_star(const ExtGraph& graph, bool keep_dummies = false);
// Removes Dummy states, retargeting their incoming edges to their successor.
FiniteParityGame eliminate_dummies(const FiniteParityGame& g);

// Entry state of every ExtGraph node (<R,1> resp. <R,1_a>).
std::vector<std::uint32_t> entry_states(const FiniteParityGame& g, std::size_t regions);

// Per ExtGraph node: 1 iff its entry state is in `win1` (a per-state flag vector).
std::vector<std::uint8_t> regstates(const FiniteParityGame& g, const std::vector<std::uint8_t>& win1,
                                    std::size_t regions);

}  // namespace tpg
