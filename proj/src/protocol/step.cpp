#include "deepsoh/protocol/step.hpp"

#include <algorithm>
#include <sstream>

#include "deepsoh/errors.hpp"

namespace deepsoh::protocol {

namespace {

bool has(const ProtocolStep& s, Quantity q) {
  return std::any_of(s.terminations.begin(), s.terminations.end(),
                     [q](const Termination& t) { return t.quantity == q; });
}

void amount(std::ostream& os, const Amount& a, const char* unit) {
  if (a.c_rate) {
    if (a.value > 0 && a.value < 1) os << "C/" << 1.0 / a.value; else os << a.value << "C";
  } else {
    os << a.value << ' ' << unit;
  }
}

}  // namespace

void ProtocolStep::validate() const {
  const std::string name = "step '" + describe(*this) + "'";
  if (terminations.empty()) throw InputError(name + " has no termination");
  if (mode == StepMode::constant_voltage && !has(*this, Quantity::current) && !has(*this, Quantity::time)) {
    throw InputError(name + ": a constant-voltage step needs a current or time termination");
  }
  if (mode == StepMode::constant_current && setpoint.value == 0.0) {
    throw InputError(name + ": constant-current setpoint is zero; use a rest step");
  }
  if (mode == StepMode::constant_voltage && !(setpoint.value > 0) ) {
    throw InputError(name + ": constant-voltage setpoint must be positive");
  }
  for (const auto& t : terminations) {
    if (t.quantity == Quantity::time && !(t.threshold.value >= 0)) throw InputError(name + ": negative time limit");
    if (t.quantity == Quantity::current && !(t.threshold.value >= 0)) {
      throw InputError(name + ": current termination must be a non-negative magnitude");
    }
  }
}

ProtocolStep rest_for(double seconds) {
  ProtocolStep s;
  s.mode = StepMode::rest;
  s.terminations = {time_at_least(seconds)};
  return s;
}

ProtocolStep constant_current(Amount current, std::vector<Termination> until, std::string label) {
  ProtocolStep s;
  s.mode = StepMode::constant_current;
  s.setpoint = current;
  s.terminations = std::move(until);
  s.label = std::move(label);
  return s;
}

ProtocolStep constant_voltage(double volts, std::vector<Termination> until, std::string label) {
  ProtocolStep s;
  s.mode = StepMode::constant_voltage;
  s.setpoint = {volts, false};
  s.terminations = std::move(until);
  s.label = std::move(label);
  return s;
}

Termination voltage_at_most(double v) { return {Quantity::voltage, Comparator::at_most, {v, false}}; }
Termination voltage_at_least(double v) { return {Quantity::voltage, Comparator::at_least, {v, false}}; }
Termination current_at_most(Amount i) { return {Quantity::current, Comparator::at_most, i}; }
Termination time_at_least(double seconds) { return {Quantity::time, Comparator::at_least, {seconds, false}}; }

std::string describe(const ProtocolStep& step) {
  if (!step.label.empty()) return step.label;
  std::ostringstream os;
  os.imbue(std::locale::classic());
  switch (step.mode) {
    case StepMode::rest: os << "rest"; break;
    case StepMode::constant_current:
      os << (step.setpoint.value >= 0 ? "discharge " : "charge ");
      amount(os, {std::abs(step.setpoint.value), step.setpoint.c_rate}, "A");
      break;
    case StepMode::constant_voltage: os << "hold " << step.setpoint.value << " V"; break;
  }
  const char* sep = " until ";
  for (const auto& t : step.terminations) {
    os << sep;
    sep = " or ";
    switch (t.quantity) {
      case Quantity::voltage: os << "V"; break;
      case Quantity::current: os << "I"; break;
      case Quantity::time: os << "t"; break;
    }
    os << (t.comparator == Comparator::at_most ? " <= " : " >= ");
    amount(os, t.threshold, t.quantity == Quantity::voltage ? "V" : t.quantity == Quantity::current ? "A" : "s");
  }
  return os.str();
}

}  // namespace deepsoh::protocol
