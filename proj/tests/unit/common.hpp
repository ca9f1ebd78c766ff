#pragma once

#include "tpg/game.hpp"
#include "tpg/rational.hpp"

#include <string>

namespace tpg::test {

inline TimedGame fixture(const std::string& name) {
  return load_game(std::string(TPG_FIXTURE_DIR) + "/" + name + ".tg");
}

inline Rational q(const char* text) { return parse_rational(text); }

inline const ConcreteState& query(const TimedGame& g, const std::string& label) {
  for (const auto& s : g.queries)
    if (s.label == label) return s.state;
  throw std::runtime_error("no query " + label);
}

}  // namespace tpg::test
