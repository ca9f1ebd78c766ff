#include "report.hpp"

#include <sstream>

namespace tpg::cli {

std::string choice_text(const TimedGame& g, const RegionChoice& c) {
  if (c.relinquish) return "relinquish";
  std::string act = c.action == kPureDelay ? "wait" : g.action_names.at(c.action);
  return "j=" + std::to_string(c.j) + " " + act;
}

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Plain: return "plain";
    case Stage::Choose1: return "1";
    case Stage::Respond2: return "2";
    case Stage::Entry: return "1a";
    case Stage::Relinquished: return "2";
    case Stage::Block: return "j2";
    case Stage::Commit: return "j1c";
    case Stage::Dummy: return "dum";
  }
  return "?";
}

std::vector<std::string> arena_labels(const FiniteParityGame& arena, const ExtGraph& graph) {
  std::vector<std::string> out(arena.size());
  for (std::uint32_t v = 0; v < arena.size(); ++v) {
    const auto& t = arena.tag[v];
    std::ostringstream os;
    os << stage_name(t.stage);
    if (t.j >= 0) os << " j=" << int(t.j);
    if (t.stage == Stage::Respond2) {
      if (t.action == kRelinquishTag) os << " relinquish";
      else os << " " << (t.action == kPureDelay ? std::string("wait") : graph.game.action_names.at(t.action));
    }
    os << " | " << graph.label(t.region);
    out[v] = os.str();
  }
  return out;
}

std::string paint(const std::string& text, bool good, bool color) {
  if (!color) return text;
  return (good ? "\x1b[32m" : "\x1b[31m") + text + "\x1b[0m";
}

std::string to_paritysol(const Solution& s) {
  std::ostringstream os;
  os << "paritysol " << (s.winner.empty() ? 0 : s.winner.size() - 1) << ";\n";
  for (std::size_t v = 0; v < s.winner.size(); ++v) {
    os << v << " " << (s.winner[v] == 1 ? 0 : 1);
    if (s.strategy[v] >= 0) os << " " << s.strategy[v];
    os << ";\n";
  }
  return os.str();
}

}  // namespace tpg::cli
