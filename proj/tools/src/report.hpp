#pragma once

#include "tpg/enlarged.hpp"
#include "tpg/parity_game.hpp"
#include "tpg/solver.hpp"

#include <string>
#include <vector>

namespace tpg::cli {

std::string choice_text(const TimedGame& g, const RegionChoice& c);
std::string stage_name(Stage s);
// One label per arena state: stage, j and the region of the state.
std::vector<std::string> arena_labels(const FiniteParityGame& arena, const ExtGraph& graph);
std::string paint(const std::string& text, bool good, bool color);
// PGSolver solution format: "paritysol <n>;" then "<id> <winner> [<succ>];".
std::string to_paritysol(const Solution& s);

}  // namespace tpg::cli
