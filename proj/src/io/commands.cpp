#include "deepsoh/io/commands.hpp"

#include <fstream>
#include <functional>
#include <iomanip>

#include "deepsoh/errors.hpp"
#include "deepsoh/io/loaders.hpp"
#include "deepsoh/io/output.hpp"
#include "deepsoh/measurement/resistance.hpp"

namespace deepsoh::io {

namespace fs = std::filesystem;

namespace {

// maps library errors to exit codes
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return exit_input;
  } catch (const identify::AmbiguousRootsError& e) {
    err << "ambiguous: " << e.what() << '\n';
    return exit_infeasible;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

std::shared_ptr<const Model> load_model(const ConfigFile& file) {
  try {
    return Model::create(load_model_parameters(file));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("invalid cell parameters: ") + e.what());
  }
}

void prepare(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ConfigFile::load(args.config);
    const auto model = load_model(config);
    const auto run = load_run_settings(config);
    auto protocol = load_protocol(ConfigFile::load(args.protocol));
    if (args.max_cycles) {
      if (*args.max_cycles < 0) throw InputError("--max-cycles must be non-negative");
      protocol.campaign.max_cycles = *args.max_cycles;
    }
    protocol::CampaignOptions options;
    options.engine = protocol.engine;
    options.rpt.noise_sigma = run.esoh_noise;
    options.rpt.seed = run.seed;
    options.sample_every = args.sample_every.value_or(protocol.campaign.rpt_every);
    if (options.sample_every < 0) throw InputError("--sample-every must be non-negative");

    degradation::Cell cell = args.initial_state ? read_state(*args.initial_state, model) : degradation::Cell::pristine(model);
    prepare(args.out_dir);
    const auto trajectory = protocol::run_campaign_in_place(cell, protocol.campaign, options);

    RunManifest manifest{"simulate", {args.config, args.protocol}, run.seed, {}};
    if (args.initial_state) manifest.inputs.push_back(*args.initial_state);
    write_samples_csv(args.out_dir / "trajectory.csv", trajectory.samples);
    Json summary = trajectory_summary(trajectory);
    write_json(args.out_dir / "summary.json", summary);
    manifest.outputs = {args.out_dir / "trajectory.csv", args.out_dir / "summary.json"};
    if (args.final_state) {
      write_json(*args.final_state, state_to_json(cell));
      manifest.outputs.push_back(*args.final_state);
    }
    write_manifest(args.out_dir, manifest);
    out << "cycles simulated: " << trajectory.cycles.size() - 1 << "\nRUL: " << trajectory.rul_cycles << " cycles ("
        << trajectory.end_reason << ")\n";
    return exit_ok;
  });
}

int cmd_rpt(const RptArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ConfigFile::load(args.config);
    const auto model = load_model(config);
    const auto run = load_run_settings(config);
    degradation::Cell cell = args.state ? read_state(*args.state, model) : degradation::Cell::pristine(model);
    prepare(args.out_dir);
    protocol::RptOptions options;
    options.noise_sigma = run.esoh_noise;
    options.seed = run.seed;
    const auto rpt = protocol::run_rpt(cell, options);

    Json report = rpt_summary(rpt);
    report["deepsoh"] = to_json(cell.soh());
    const auto expected = measurement::esoh_from_balance(model->cell(), cell.soh().capacity_pos, cell.soh().capacity_neg,
                                                         model->initial_inventory() * (1.0 - cell.soh().lli));
    report["esoh_from_deepsoh"] = to_json(expected);
    report["resistance_closed_form_ohm"] = measurement::state_resistance(*model, cell.soh());
    write_curve_csv(args.out_dir / "pseudo_ocv.csv", rpt.pseudo_ocv);
    write_curve_csv(args.out_dir / "charge.csv", rpt.charge);
    write_curve_csv(args.out_dir / "discharge.csv", rpt.discharge);
    write_json(args.out_dir / "rpt.json", report);
    RunManifest manifest{"rpt", {args.config}, run.seed, {}};
    if (args.state) manifest.inputs.push_back(*args.state);
    for (const char* f : {"pseudo_ocv.csv", "charge.csv", "discharge.csv", "rpt.json"}) {
      manifest.outputs.push_back(args.out_dir / f);
    }
    write_manifest(args.out_dir, manifest);
    out << std::setprecision(6) << "capacity: " << rpt.capacity << " Ah\nR_s: " << rpt.resistance
        << " ohm\nexpansion: " << rpt.expansion << " m\n";
    if (rpt.esoh) {
      out << "C_p: " << rpt.esoh->capacity_pos << " Ah, C_n: " << rpt.esoh->capacity_neg << " Ah, x0: " << rpt.esoh->x0
          << ", y0: " << rpt.esoh->y0 << '\n';
    }
    return exit_ok;
  });
}

int cmd_identify(const IdentifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ConfigFile::load(args.config);
    const auto model = load_model(config);
    auto y = load_measurement(ConfigFile::load(args.measurements));
    if (args.with_expansion && !y.expansion) {
      throw InputError("--with-expansion needs an 'expansion' entry in [measurement]");
    }
    if (!args.with_expansion) y.expansion.reset();
    identify::InversionOptions options;
    options.lli_budget = args.lli_budget;
    options.tie_break_by_lli_budget = args.tie_break;
    Json result;
    identify::IdentificationResult r;
    try {
      r = args.with_expansion ? identify::invert_with_expansion(*model, y, options)
                              : identify::invert_without_expansion(*model, y, options);
      result = to_json(r);
    } catch (const identify::AmbiguousRootsError& e) {
      result = Json{{"kind", "ambiguous"},
                    {"diagnostic", e.what()},
                    {"candidates", Json::array({to_json(e.first()), to_json(e.second())})}};
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
    result["measurement"] = to_json(y);
    const std::string text = result.dump(2);
    out << text << '\n';
    if (args.out_file) write_json(*args.out_file, result);
    if (result["kind"] == "ambiguous" || r.kind == identify::ResultKind::infeasible) {
      err << (result["kind"] == "ambiguous" ? "ambiguous" : "infeasible") << ": "
          << result.value("diagnostic", std::string()) << '\n';
      return exit_infeasible;
    }
    return exit_ok;
  });
}

int cmd_ambiguity_demo(const AmbiguityArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ConfigFile::load(args.config);
    const auto model = load_model(config);
    const auto run = load_run_settings(config);
    auto setup = load_ambiguity_config(config);
    if (args.members) setup.members = *args.members;
    setup.jobs = args.jobs;
    setup.validate();
    auto protocol = load_protocol(ConfigFile::load(args.protocol));
    if (args.max_cycles) protocol.campaign.max_cycles = *args.max_cycles;
    protocol::CampaignOptions options;
    options.engine = protocol.engine;
    options.rpt.noise_sigma = run.esoh_noise;
    options.rpt.seed = run.seed;

    prepare(args.out_dir);
    const auto report = identify::ambiguity_experiment(model, setup, protocol.campaign, options);

    RunManifest manifest{"ambiguity-demo", {args.config, args.protocol}, run.seed, {}};
    for (std::size_t i = 0; i < report.members.size(); ++i) {
      const auto& m = report.members[i];
      const auto base = "member_" + std::to_string(i);
      write_cycles_csv(args.out_dir / (base + "_cycles.csv"), m.trajectory.cycles);
      write_curve_csv(args.out_dir / (base + "_initial_discharge.csv"), m.trajectory.cycles.front().rpt->discharge);
      manifest.outputs.push_back(args.out_dir / (base + "_cycles.csv"));
      manifest.outputs.push_back(args.out_dir / (base + "_initial_discharge.csv"));
    }
    {
      std::ofstream rul(args.out_dir / "rul.csv", std::ios::binary);
      rul << "member,delta_sei_m,delta_pl_m,expansion_m,rul_cycles,reached_eol\n";
      for (std::size_t i = 0; i < report.members.size(); ++i) {
        const auto& m = report.members[i];
        rul << i << ',' << format_number(m.initial.delta_sei) << ',' << format_number(m.initial.delta_pl) << ','
            << format_number(*m.measured.expansion) << ',' << m.trajectory.rul_cycles << ','
            << (m.trajectory.reached_eol ? "true" : "false") << '\n';
      }
    }
    manifest.outputs.push_back(args.out_dir / "rul.csv");
    write_json(args.out_dir / "report.json", ambiguity_summary(report));
    manifest.outputs.push_back(args.out_dir / "report.json");
    write_manifest(args.out_dir, manifest);

    out << "member  delta_sei[nm]  delta_pl[nm]  expansion[um]  RUL\n";
    for (std::size_t i = 0; i < report.members.size(); ++i) {
      const auto& m = report.members[i];
      out << std::setw(6) << i << std::fixed << std::setprecision(2) << std::setw(15) << m.initial.delta_sei * 1e9
          << std::setw(14) << m.initial.delta_pl * 1e9 << std::setprecision(4) << std::setw(15)
          << *m.measured.expansion * 1e6 << std::setw(5) << m.trajectory.rul_cycles << '\n';
    }
    out << std::defaultfloat << std::setprecision(4) << "C/20 curve gap: " << report.max_curve_gap * 1e3
        << " mV, R_s spread: " << report.resistance_spread * 100 << " %\n";
    return exit_ok;
  });
}

}  // namespace deepsoh::io
