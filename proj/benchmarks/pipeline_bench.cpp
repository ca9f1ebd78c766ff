#include "tpg/harness.hpp"
#include "tpg/reduction.hpp"
#include "tpg/robust.hpp"
#include "tpg/solver.hpp"

#include <benchmark/benchmark.h>

using namespace tpg;

namespace {

TimedGame fixture(const char* name) { return load_game(std::string(TPG_FIXTURE_DIR) + "/" + name + ".tg"); }

const char* kNames[] = {"fig1", "example_one_lemma", "open_counterex"};

void BM_RegionGraph(benchmark::State& st) {
  const TimedGame g = fixture(kNames[st.range(0)]);
  const auto seeds = default_seeds(g);
  for (auto _ : st) {
    auto graph = build_ext_region_graph(g, Mode::Exact, seeds);
    benchmark::DoNotOptimize(graph.nodes.data());
    st.counters["ext_regions"] = static_cast<double>(graph.size());
  }
  st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_RegionGraph)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_AfStar(benchmark::State& st) {
  const TimedGame g = fixture(kNames[st.range(0)]);
  const ExtGraph graph = build_ext_region_graph(g, Mode::Exact, default_seeds(g));
  for (auto _ : st) {
    auto arena = build_af_star(graph);
    benchmark::DoNotOptimize(arena.succ.data());
    st.counters["states"] = static_cast<double>(arena.size());
  }
  st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_AfStar)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

// (A^f)* arenas of random timed games, the solver workload in practice.
std::vector<FiniteParityGame> arenas() {
  std::vector<FiniteParityGame> out;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    RandomGameSpec spec;
    spec.seed = s;
    const TimedGame g = random_timed_game(spec);
    out.push_back(build_af_star(build_ext_region_graph(g, Mode::Exact, default_seeds(g))));
  }
  return out;
}

void BM_Zielonka(benchmark::State& st) {
  const auto games = arenas();
  for (auto _ : st)
    for (const auto& g : games) benchmark::DoNotOptimize(solve_zielonka(g).winner.data());
}
BENCHMARK(BM_Zielonka)->Unit(benchmark::kMillisecond);

void BM_Spm(benchmark::State& st) {
  const auto games = arenas();
  for (auto _ : st)
    for (const auto& g : games) benchmark::DoNotOptimize(solve_spm(g).winner.data());
}
BENCHMARK(BM_Spm)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& st) {
  const TimedGame g = fixture("fig1");
  const Mode mode = st.range(0) ? Mode::LimitRobust : Mode::Exact;
  for (auto _ : st) benchmark::DoNotOptimize(analyze(g, mode).region_win.data());
  st.SetLabel(st.range(0) ? "limit-robust" : "exact");
}
BENCHMARK(BM_Analyze)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BoundedRobust(benchmark::State& st) {
  const TimedGame g = fixture("fig1");
  const ConcreteState origin = g.queries.front().state;
  const JitterParams p{Rational(1, st.range(0)), 0};
  for (auto _ : st) benchmark::DoNotOptimize(solve_bounded_robust(g, p, {origin}).wins(origin));
  st.SetLabel("eps=1/" + std::to_string(st.range(0)));
}
BENCHMARK(BM_BoundedRobust)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_Erode(benchmark::State& st) {
  auto lookup = [](std::string_view n) { return n == "x" ? 0 : n == "y" ? 1 : n == "w" ? 2 : -1; };
  const Constraint c = parse_constraint("(x<=3 && y>1) || (x>=2 && w<4 && y<=2)", lookup);
  for (auto _ : st) benchmark::DoNotOptimize(erode(c, 3, Rational(1, 3)).size());
}
BENCHMARK(BM_Erode);

}  // namespace

BENCHMARK_MAIN();
