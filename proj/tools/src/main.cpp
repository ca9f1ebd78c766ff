#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace {

bool color_from_env() {
  const char* v = std::getenv("TP_COLOR");
  return v != nullptr && std::strcmp(v, "1") == 0;
}

void add_run_options(CLI::App* sub, tpg::cli::RunConfig& cfg, bool with_mode) {
  sub->add_option("input", cfg.input, "Game file in .tg format")->required()->check(CLI::ExistingFile);
  if (!with_mode) return;
  sub->add_option("--mode", cfg.mode, "Winning notion")
      ->check(CLI::IsMember({"exact", "limit-robust", "bounded-robust"}));
  sub->add_option("--jitter", cfg.jitter, "Jitter bound p/q (bounded-robust)");
  sub->add_option("--response", cfg.response, "Response time p/q (bounded-robust)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tpg::cli;
  CLI::App app{"Timed parity games: exact, limit-robust and bounded-robust winning regions"};
  app.require_subcommand(1);

  RunConfig solve_cfg, check_cfg, export_cfg;
  VerifyConfig verify_cfg;
  SolvePgConfig pg_cfg;
  std::string solve_format = "text", export_format = "dot";

  auto* solve = app.add_subcommand("solve", "Decide the query states and print winning regions and strategy");
  add_run_options(solve, solve_cfg, true);
  solve->add_option("--format", solve_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  solve->add_option("--state", solve_cfg.states, "Query state \"loc x=1/2, y=0\" (replaces file queries)");

  auto* check = app.add_subcommand("check", "Receptiveness of both players");
  add_run_options(check, check_cfg, false);

  auto* exp = app.add_subcommand("export-game", "Write the region graph (dot) or the finite parity game (pgsolver)");
  add_run_options(exp, export_cfg, true);
  exp->add_option("--format", export_format, "dot or pgsolver")->check(CLI::IsMember({"dot", "pgsolver"}));
  exp->add_option("-o,--output", export_cfg.output, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Randomized cross-checks; one JSON object per line");
  verify->add_option("--seed", verify_cfg.seed, "Base seed");
  verify->add_option("--trials", verify_cfg.trials, "Random games to check")->check(CLI::NonNegativeNumber);
  verify->add_option("--samples", verify_cfg.samples, "Concrete joint moves sampled per game")->check(CLI::NonNegativeNumber);
  verify->add_option("--dump-dir", verify_cfg.dump_dir, "Where shrunk counterexamples are written");
  verify->add_option("inputs", verify_cfg.inputs, "Game files to check in addition")->check(CLI::ExistingFile);

  auto* pg = app.add_subcommand("solve-pg", "Solve a parity game in PGSolver format");
  pg->add_option("input", pg_cfg.input, "PGSolver file")->required()->check(CLI::ExistingFile);
  pg->add_option("--solver", pg_cfg.solver, "zielonka, spm or both")->check(CLI::IsMember({"zielonka", "spm", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const bool color = color_from_env();
  if (solve->parsed()) {
    solve_cfg.format = solve_format == "json" ? OutputFormat::Json : OutputFormat::Text;
    solve_cfg.color = color;
    return cmd_solve(solve_cfg, std::cout, std::cerr);
  }
  if (check->parsed()) {
    check_cfg.color = color;
    return cmd_check(check_cfg, std::cout, std::cerr);
  }
  if (exp->parsed()) {
    export_cfg.format = export_format == "pgsolver" ? OutputFormat::Pgsolver : OutputFormat::Dot;
    return cmd_export(export_cfg, std::cout, std::cerr);
  }
  if (verify->parsed()) return cmd_verify(verify_cfg, std::cout, std::cerr);
  if (pg->parsed()) return cmd_solve_pg(pg_cfg, std::cout, std::cerr);
  return 2;
}
