#include <iostream>

#include <CLI11.hpp>

#include "deepsoh/io/commands.hpp"
#include "deepsoh/io/output.hpp"

using namespace deepsoh::io;

int main(int argc, char** argv) {
  CLI::App app{"deepsoh: battery degradation states, measurements and identifiability"};
  app.set_version_flag("--version", std::string(tool_version));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "cycle a cell to end of life and record its trajectory");
  simulate->add_option("--config", sim.config, "cell configuration file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--protocol", sim.protocol, "protocol file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim.out_dir, "output directory")->required();
  simulate->add_option("--state", sim.initial_state, "start from a saved state file")->check(CLI::ExistingFile);
  simulate->add_option("--save-state", sim.final_state, "write the end state to this file");
  simulate->add_option("--max-cycles", sim.max_cycles, "override the protocol's max_cycles");
  simulate->add_option("--sample-every", sim.sample_every, "cycles between recorded time series (0: none)");

  RptArgs rpt;
  auto* rpt_cmd = app.add_subcommand("rpt", "run a reference performance test");
  rpt_cmd->add_option("--config", rpt.config, "cell configuration file")->required()->check(CLI::ExistingFile);
  rpt_cmd->add_option("--state", rpt.state, "state file (pristine cell when omitted)")->check(CLI::ExistingFile);
  rpt_cmd->add_option("--out", rpt.out_dir, "output directory")->required();

  IdentifyArgs id;
  bool without = false, no_budget = false;
  auto* identify = app.add_subcommand("identify", "invert a measurement vector into degradation states");
  identify->add_option("--config", id.config, "cell configuration file")->required()->check(CLI::ExistingFile);
  identify->add_option("--measurements", id.measurements, "measurement file")->required()->check(CLI::ExistingFile);
  auto* with_flag = identify->add_flag("--with-expansion", "use the expansion measurement (default)");
  identify->add_flag("--without", without, "ignore expansion and report the family of states")->excludes(with_flag);
  identify->add_flag("--no-lli-budget", no_budget, "do not shrink the family by the lithium budget");
  identify->add_flag("--tie-break-lli", id.tie_break, "drop expansion roots that break the lithium budget");
  identify->add_option("--out", id.out_file, "also write the JSON result here");

  AmbiguityArgs amb;
  auto* demo = app.add_subcommand("ambiguity-demo", "cells with equal eSOH and resistance, divergent lives");
  demo->add_option("--config", amb.config, "cell configuration file")->required()->check(CLI::ExistingFile);
  demo->add_option("--protocol", amb.protocol, "protocol file")->required()->check(CLI::ExistingFile);
  demo->add_option("--out", amb.out_dir, "output directory")->required();
  demo->add_option("--members", amb.members, "number of family members");
  demo->add_option("--jobs", amb.jobs, "parallel campaigns")->check(CLI::PositiveNumber);
  demo->add_option("--max-cycles", amb.max_cycles, "override the protocol's max_cycles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  if (*simulate) return cmd_simulate(sim, std::cout, std::cerr);
  if (*rpt_cmd) return cmd_rpt(rpt, std::cout, std::cerr);
  if (*identify) {
    id.with_expansion = !without;
    id.lli_budget = !no_budget;
    return cmd_identify(id, std::cout, std::cerr);
  }
  return cmd_ambiguity_demo(amb, std::cout, std::cerr);
}
