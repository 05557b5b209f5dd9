#pragma once

#include <optional>
#include <vector>

#include "deepsoh/degradation/cell.hpp"
#include "deepsoh/measurement/esoh.hpp"
#include "deepsoh/protocol/step.hpp"

namespace deepsoh::protocol {

/// One accepted time step.
struct Sample {
  double time = 0.0;     // s, cell clock
  double current = 0.0;  // A, discharge positive
  double voltage = 0.0;  // V
  double x = 0.0;        // mean negative stoichiometry
  double y = 0.0;        // mean positive stoichiometry
  int cycle = 0;
  int step = 0;
};

struct EngineOptions {
  double dt_active = 10.0;          // s, CC and CV steps
  double dt_rest = 60.0;            // s
  double dt_min = 1e-3;             // s, floor of the step-halving
  double voltage_tolerance = 0.5e-3;  // V, allowed overshoot of a voltage threshold
  double cv_tolerance = 1e-5;       // V, constant-voltage current solve
  double max_step_time = 100.0 * 3600.0;
};

struct StepResult {
  int fired = -1;             // index of the termination that ended the step
  double duration = 0.0;      // s
  double charge = 0.0;        // Ah, discharge positive
  double discharged = 0.0;    // Ah delivered while the current was positive
  double final_voltage = 0.0;
  double final_current = 0.0;
};

/// Runs one step until a termination fires. Voltage thresholds are approached
/// by halving the time step so the overshoot stays within the tolerance; time
/// limits are hit exactly. Appends accepted samples to `log` if given.
StepResult run_step(degradation::Cell& cell, const ProtocolStep& step, const EngineOptions& options = {},
                    std::vector<Sample>* log = nullptr, int cycle = 0, int step_index = 0);

// ---- reference performance test -------------------------------------------

struct RptOptions {
  double c_rate = 1.0 / 20.0;
  double cutoff_c_rate = 1.0 / 100.0;  // taper current of the top-of-charge hold
  double dt = 30.0;                    // s
  double pulse_duration = 0.01;        // s
  bool extract_esoh = true;
  double noise_sigma = 0.0;            // V added to the pseudo-OCV before fitting
  std::uint64_t seed = 0;
  measurement::ESOHFitOptions fit;
};

struct RptResult {
  measurement::Curve charge;      // C/20 charge, capacity from the discharged end
  measurement::Curve discharge;   // C/20 discharge, capacity from the discharged end
  measurement::Curve pseudo_ocv;
  double capacity = 0.0;          // Ah, coulomb count of the C/20 discharge
  double resistance = 0.0;        // ohm, pulse dV/dI at mid capacity
  double pulse_x = 0.0, pulse_y = 0.0;  // mean stoichiometries at the pulse
  double expansion = 0.0;         // m
  std::optional<measurement::ESOHRecord> esoh;
};

/// C/20 charge with a taper hold, C/20 discharge and charge curves, then a
/// discharge to half capacity, a 2 h rest and a short current pulse. Runs on
/// a copy of the cell with aging switched off.
RptResult run_rpt(const degradation::Cell& cell, const RptOptions& rpt = {}, const EngineOptions& options = {});

/// (V(0) - V(after a pulse of `current` for `duration`)) / current.
double pulse_resistance(const degradation::Cell& cell, double current, double duration);

}  // namespace deepsoh::protocol
