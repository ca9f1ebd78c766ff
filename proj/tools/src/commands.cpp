#include "commands.hpp"

#include "report.hpp"
#include "tpg/harness.hpp"
#include "tpg/reduction.hpp"
#include "tpg/robust.hpp"
#include "tpg/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace tpg::cli {

using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TimedGame load(const RunConfig& cfg) {
  TimedGame g;
  try {
    g = parse_game(read_file(cfg.input));
  } catch (const ParseError& e) {
    throw UsageError(cfg.input + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.what());
  }
  if (cfg.states.empty()) return g;
  g.queries.clear();
  int n = 0;
  for (const auto& text : cfg.states) {
    std::string norm = text;
    for (auto& c : norm)
      if (c == ',') c = ' ';
    std::istringstream is(norm);
    std::string loc, assign;
    is >> loc;
    std::vector<std::pair<std::string, Rational>> values;
    while (is >> assign) {
      const auto eq = assign.find('=');
      if (eq == std::string::npos) throw UsageError("bad clock assignment '" + assign + "' in --state");
      values.emplace_back(assign.substr(0, eq), parse_rational(assign.substr(eq + 1)));
    }
    g.queries.push_back(QueryState{"q" + std::to_string(++n), make_state(g, loc, values)});
  }
  g.finalize();
  return g;
}

std::optional<JitterParams> jitter_params(const RunConfig& cfg) {
  if (cfg.mode != "bounded-robust") {
    if (cfg.jitter || cfg.response) throw UsageError("--jitter/--response require --mode bounded-robust");
    return std::nullopt;
  }
  if (!cfg.jitter || !cfg.response) throw UsageError("--mode bounded-robust requires --jitter and --response");
  JitterParams p{parse_rational(*cfg.jitter), parse_rational(*cfg.response)};
  if (p.jitter < 0 || p.response < 0) throw UsageError("jitter and response must be nonnegative");
  return p;
}

Mode mode_of(const RunConfig& cfg) { return cfg.mode == "limit-robust" ? Mode::LimitRobust : Mode::Exact; }

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: " << e.line << ":" << e.column << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

struct Verdicts {
  const TimedGame* shown = nullptr;  // game the regions below belong to
  std::vector<std::pair<const QueryState*, bool>> queries;
  std::vector<Region> winning;
  std::vector<std::pair<Region, std::optional<RegionChoice>>> strategy;
  std::int64_t scale = 1;
};

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TimedGame g = load(cfg);
    const auto jp = jitter_params(cfg);
    Verdicts v;
    std::optional<Analysis> exact;
    std::optional<BoundedResult> bounded;
    if (jp) {
      std::vector<ConcreteState> seeds;
      for (const auto& q : g.queries) seeds.push_back(q.state);
      bounded = solve_bounded_robust(g, *jp, seeds);
      v.shown = &bounded->jitter.game;
      v.scale = bounded->jitter.scale;
      for (const auto& q : g.queries) v.queries.emplace_back(&q, bounded->wins(q.state));
      for (const auto& s : bounded->analysis.winning_regions())
        if (static_cast<int>(s.loc) < bounded->jitter.base_locations) v.winning.push_back(s);
      for (const auto& r : v.winning) v.strategy.emplace_back(r, bounded->analysis.choice_at(r));
    } else {
      exact = analyze(g, mode_of(cfg));
      v.shown = &g;
      for (const auto& q : g.queries) v.queries.emplace_back(&q, exact->wins(region_of(g, q.state)));
      v.winning = exact->winning_regions();
      for (const auto& r : v.winning) v.strategy.emplace_back(r, exact->choice_at(r));
    }
    bool all = true;
    for (const auto& [q, w] : v.queries) all = all && w;

    if (cfg.format == OutputFormat::Json) {
      ordered_json j;
      j["game"] = g.name;
      j["mode"] = cfg.mode;
      if (jp) {
        j["jitter"] = to_string(jp->jitter);
        j["response"] = to_string(jp->response);
        j["scale"] = v.scale;
      }
      j["queries"] = ordered_json::array();
      for (const auto& [q, w] : v.queries)
        j["queries"].push_back({{"label", q->label},
                                {"state", to_string(g, q->state)},
                                {"region", to_string(g, region_of(g, q->state))},
                                {"verdict", w ? "WIN" : "LOSE"}});
      j["winning_regions"] = ordered_json::array();
      for (const auto& r : v.winning) j["winning_regions"].push_back(to_string(*v.shown, r));
      j["strategy"] = ordered_json::array();
      for (const auto& [r, c] : v.strategy)
        j["strategy"].push_back({{"region", to_string(*v.shown, r)}, {"choice", c ? choice_text(*v.shown, *c) : "none"}});
      out << j.dump(2) << "\n";
    } else {
      out << "game " << g.name << "  mode " << cfg.mode;
      if (jp) out << "  jitter " << to_string(jp->jitter) << "  response " << to_string(jp->response);
      out << "\n";
      for (const auto& [q, w] : v.queries)
        out << "query " << q->label << "  " << to_string(g, q->state) << "  "
            << paint(w ? "WIN" : "LOSE", w, cfg.color) << "\n";
      if (jp) out << "regions below are in the jitter game, time scaled by " << v.scale << "\n";
      out << "winning regions (" << v.winning.size() << "):\n";
      for (const auto& r : v.winning) out << "  " << to_string(*v.shown, r) << "\n";
      out << "strategy:\n";
      for (const auto& [r, c] : v.strategy)
        out << "  " << to_string(*v.shown, r) << "  ->  " << (c ? choice_text(*v.shown, *c) : "none") << "\n";
    }
    return all ? 0 : 1;
  });
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TimedGame g = load(cfg);
    const Receptiveness r = check_receptive(g);
    out << "player1: " << paint(r.player1 ? "receptive" : "NOT receptive", r.player1, cfg.color) << "\n";
    out << "player2: " << paint(r.player2 ? "receptive" : "NOT receptive", r.player2, cfg.color) << "\n";
    return r.player1 && r.player2 ? 0 : 1;
  });
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    TimedGame g = load(cfg);
    const auto jp = jitter_params(cfg);
    Mode mode = mode_of(cfg);
    std::vector<Region> seeds;
    if (jp) {
      std::vector<ConcreteState> states;
      for (const auto& q : g.queries) states.push_back(q.state);
      JitterGame jg = build_jitter_game(g, *jp);
      if (states.empty()) {
        for (const auto& r : enumerate_regions(jg.game))
          if (static_cast<int>(r.loc) < jg.base_locations && r.integral(jg.z) && r.h[jg.z] == 0) seeds.push_back(r);
      } else {
        for (const auto& s : states) seeds.push_back(lift_region(jg, s));
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
      }
      g = jg.game;
      mode = Mode::Exact;
    } else {
      seeds = default_seeds(g);
    }
    const ExtGraph graph = build_ext_region_graph(g, mode, seeds);
    std::string text;
    if (cfg.format == OutputFormat::Pgsolver) {
      FiniteParityGame arena = build_af_star(graph);
      arena.label = arena_labels(arena, graph);
      text = to_pgsolver(arena);
    } else {
      text = to_dot(graph);
    }
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw UsageError("cannot write " + cfg.output);
      f << text;
    }
    return 0;
  });
}

int cmd_solve_pg(const SolvePgConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FiniteParityGame g = parse_pgsolver(read_file(cfg.input));
    Solution s;
    if (cfg.solver == "spm") {
      s = solve_spm(g);
    } else {
      s = solve_zielonka(g);
      if (cfg.solver == "both" && solve_spm(g).winner != s.winner) throw std::runtime_error("solvers disagree");
    }
    out << to_paritysol(s);
    return 0;
  });
}

namespace {

struct GameChecks {
  int failures = 0;
  std::ostream& out;
  std::string dump_dir;

  void emit(const ordered_json& j) { out << j.dump() << "\n"; }

  void run(const TimedGame& g, ordered_json id, int samples, std::uint64_t seed) {
    for (Mode mode : {Mode::Exact, Mode::LimitRobust}) {
      const auto rep = cross_check(g, mode);
      ordered_json j = id;
      j["check"] = "cross_check";
      j["mode"] = mode == Mode::Exact ? "exact" : "limit-robust";
      j["ok"] = rep.ok;
      j["regions"] = rep.regions;
      j["af_states"] = rep.af_states;
      j["af_star_states"] = rep.af_star_states;
      j["spm"] = rep.spm_used;
      if (!rep.ok) {
        ++failures;
        j["detail"] = rep.detail;
        const TimedGame small = shrink_game(g, [mode](const TimedGame& t) { return !cross_check(t, mode).ok; });
        const auto path = std::filesystem::path(dump_dir) / (g.name + "_shrunk.tg");
        std::ofstream(path) << serialize_game(small);
        j["dump"] = path.string();
      }
      emit(j);
    }
    const auto s = sample_region_semantics(g, static_cast<std::size_t>(samples), seed);
    ordered_json j = id;
    j["check"] = "sampling";
    j["ok"] = s.divergences == 0;
    j["trials"] = s.trials;
    j["divergences"] = s.divergences;
    j["ties"] = s.ties;
    if (!s.messages.empty()) j["first"] = s.messages.front();
    if (s.divergences) ++failures;
    emit(j);

    const Analysis exact = analyze(g, Mode::Exact);
    const Analysis robust = analyze(g, Mode::LimitRobust);
    std::size_t violations = 0;
    for (const auto& r : robust.winning_regions())
      if (!exact.wins(r)) ++violations;
    ordered_json c = id;
    c["check"] = "containment";
    c["ok"] = violations == 0;
    c["exact"] = exact.winning_regions().size();
    c["limit_robust"] = robust.winning_regions().size();
    if (violations) ++failures;
    emit(c);
  }
};

}  // namespace

int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GameChecks checks{0, out, cfg.dump_dir};
    for (const auto& path : cfg.inputs) {
      RunConfig rc;
      rc.input = path;
      const TimedGame g = load(rc);
      checks.run(g, ordered_json{{"game", path}}, cfg.samples, cfg.seed);
    }
    for (int i = 0; i < cfg.trials; ++i) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
      RandomGameSpec spec;
      spec.seed = seed;
      const TimedGame g = random_timed_game(spec);
      checks.run(g, ordered_json{{"game", g.name}, {"seed", seed}}, cfg.samples, seed);

      const FiniteParityGame pg = random_parity_game(seed);
      const Solution z = solve_zielonka(pg), p = solve_spm(pg), b = brute_force_parity(pg);
      const std::string sound = check_solution(pg, z);
      ordered_json j{{"game", "parity_" + std::to_string(seed)}, {"seed", seed}, {"check", "parity_solvers"}};
      const bool ok = z.winner == p.winner && z.winner == b.winner && sound.empty();
      j["ok"] = ok;
      j["states"] = pg.size();
      if (!sound.empty()) j["detail"] = sound;
      if (!ok) ++checks.failures;
      checks.emit(j);
    }
    checks.emit(ordered_json{{"summary", {{"failures", checks.failures}}}});
    return checks.failures == 0 ? 0 : 1;
  });
}

}  // namespace tpg::cli
