#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

namespace deepsoh::io {

enum ExitCode : int { exit_ok = 0, exit_input = 2, exit_infeasible = 3, exit_numerical = 4 };

struct SimulateArgs {
  std::filesystem::path config, protocol, out_dir;
  std::optional<std::filesystem::path> initial_state;  // start from a saved state instead of pristine
  std::optional<std::filesystem::path> final_state;    // also save the end state here
  std::optional<int> max_cycles;
  std::optional<int> sample_every;                     // cycles between recorded time series
};
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

struct RptArgs {
  std::filesystem::path config, out_dir;
  std::optional<std::filesystem::path> state;  // pristine when absent
};
int cmd_rpt(const RptArgs& args, std::ostream& out, std::ostream& err);

struct IdentifyArgs {
  std::filesystem::path config, measurements;
  bool with_expansion = true;
  bool lli_budget = true;
  bool tie_break = false;
  std::optional<std::filesystem::path> out_file;
};
int cmd_identify(const IdentifyArgs& args, std::ostream& out, std::ostream& err);

struct AmbiguityArgs {
  std::filesystem::path config, protocol, out_dir;
  std::optional<int> members;
  int jobs = 1;
  std::optional<int> max_cycles;
};
int cmd_ambiguity_demo(const AmbiguityArgs& args, std::ostream& out, std::ostream& err);

}  // namespace deepsoh::io
