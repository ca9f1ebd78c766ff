#pragma once

#include "tpg/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tpg::cli {

enum class OutputFormat { Text, Json, Dot, Pgsolver };

struct RunConfig {
  std::string input;
  std::string mode = "exact";  // exact | limit-robust | bounded-robust
  std::optional<std::string> jitter;
  std::optional<std::string> response;
  OutputFormat format = OutputFormat::Text;
  std::vector<std::string> states;  // query overrides "loc x=1/2, y=0"
  std::string output;               // empty: stdout
  bool color = false;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  int trials = 20;
  int samples = 200;
  std::vector<std::string> inputs;
  std::string dump_dir = ".";
};

struct SolvePgConfig {
  std::string input;
  std::string solver = "zielonka";  // zielonka | spm | both
};

// Exit codes: 0 success / all queries won, 1 some query lost or check failed, 2 error.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve_pg(const SolvePgConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace tpg::cli
