#pragma once

#include <string>
#include <vector>

namespace deepsoh::protocol {

enum class StepMode { constant_current, constant_voltage, rest };
enum class Quantity { voltage, current, time };
enum class Comparator { at_most, at_least };

/// A magnitude that may be given in absolute units or as a C-rate multiple.
struct Amount {
  double value = 0.0;
  bool c_rate = false;  // value multiplies the nominal capacity (A per Ah)

  double resolve(double nominal_capacity_ah) const { return c_rate ? value * nominal_capacity_ah : value; }
};

/// Fires when the quantity satisfies `comparator threshold`. Current is
/// compared by magnitude; time counts from the start of the step.
struct Termination {
  Quantity quantity = Quantity::time;
  Comparator comparator = Comparator::at_least;
  Amount threshold;
};

/// CC setpoints are signed currents (discharge positive); CV setpoints are
/// volts; rest ignores the setpoint.
struct ProtocolStep {
  StepMode mode = StepMode::rest;
  Amount setpoint;
  std::vector<Termination> terminations;
  std::string label;

  /// Throws InputError naming the step when it cannot terminate.
  void validate() const;
};

ProtocolStep rest_for(double seconds);
ProtocolStep constant_current(Amount current, std::vector<Termination> until, std::string label = {});
ProtocolStep constant_voltage(double volts, std::vector<Termination> until, std::string label = {});

Termination voltage_at_most(double v);
Termination voltage_at_least(double v);
Termination current_at_most(Amount i);
Termination time_at_least(double seconds);

std::string describe(const ProtocolStep& step);

}  // namespace deepsoh::protocol
