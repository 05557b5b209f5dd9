#include "deepsoh/protocol/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "deepsoh/errors.hpp"

namespace deepsoh::protocol {

using degradation::Cell;

namespace {

bool satisfied(const Termination& t, double value, double threshold) {
  return t.comparator == Comparator::at_most ? value <= threshold : value >= threshold;
}

struct Thresholds {
  std::vector<double> value;  // resolved to SI
};

Thresholds resolve(const ProtocolStep& step, double nominal) {
  Thresholds r;
  for (const auto& t : step.terminations) r.value.push_back(t.threshold.resolve(nominal));
  return r;
}


// current that holds the terminal voltage at `target` after a step of dt
double solve_cv_current(const Cell& cell, double target, double dt, double guess, double scale, double tol) {
  auto f = [&](double current) {
    try {
      return cell.trial_voltage(current, dt) - target;
    } catch (const SaturationError&) {
    } catch (const KineticsSingularError&) {
    } catch (const DomainError&) {
    }
    // out of range: charging drives the voltage up, discharging down
    return current < 0 ? 1.0 : -1.0;
  };
  double a = guess, fa = f(a);
  if (std::abs(fa) < tol) return a;
  // the terminal voltage falls as the current rises
  double step = std::max(scale, 1e-6) * (fa > 0 ? 1.0 : -1.0);
  double b = a + step, fb = f(b);
  int expand = 0;
  while (fa * fb > 0) {
    a = b;
    fa = fb;
    step *= 2.0;
    b = a + step;
    fb = f(b);
    if (++expand > 60) throw ProtocolStallError("constant-voltage current could not be bracketed");
  }
  if (std::abs(fb) < tol) return b;
  std::uintmax_t iterations = 200;
  auto stop = [&](double lo, double hi) {
    return std::abs(hi - lo) <= 1e-12 * std::max(1.0, std::abs(lo)) ||
           std::abs(f(0.5 * (lo + hi))) < tol;
  };
  auto [lo, hi] = boost::math::tools::toms748_solve(f, std::min(a, b), std::max(a, b), a < b ? fa : fb,
                                                    a < b ? fb : fa, stop, iterations);
  return 0.5 * (lo + hi);
}

}  // namespace

StepResult run_step(Cell& cell, const ProtocolStep& step, const EngineOptions& options, std::vector<Sample>* log,
                    int cycle, int step_index) {
  step.validate();
  const double nominal = cell.model().nominal_capacity();
  const Thresholds limits = resolve(step, nominal);
  const bool resting = step.mode == StepMode::rest;
  const double dt_nominal = resting ? options.dt_rest : options.dt_active;

  double current = 0.0;
  if (step.mode == StepMode::constant_current) current = step.setpoint.resolve(nominal);

  StepResult result;
  auto record = [&](double i, double v) {
    if (log) log->push_back({cell.time(), i, v, cell.x(), cell.y(), cycle, step_index});
  };

  // value of each terminating quantity at elapsed time t
  auto check = [&](double elapsed, double i, double v) {
    for (std::size_t k = 0; k < step.terminations.size(); ++k) {
      const auto& t = step.terminations[k];
      const double value = t.quantity == Quantity::voltage ? v
                           : t.quantity == Quantity::current ? std::abs(i)
                                                             : elapsed;
      const double threshold = limits.value[k];
      if (t.quantity == Quantity::time) {
        if (elapsed >= threshold - 1e-9 * std::max(1.0, threshold)) return static_cast<int>(k);
      } else if (satisfied(t, value, threshold)) {
        return static_cast<int>(k);
      }
    }
    return -1;
  };

  double v = cell.terminal_voltage(current);
  if (step.mode == StepMode::constant_voltage) {
    current = solve_cv_current(cell, step.setpoint.value, options.dt_min, 0.0, nominal / 100.0, options.cv_tolerance);
    v = cell.terminal_voltage(current);
  }
  if (log && log->empty()) record(current, v);
  double elapsed = 0.0;
  if (int k = check(0.0, current, v); k >= 0 && step.mode != StepMode::constant_voltage) {
    result.fired = k;
    result.final_voltage = v;
    result.final_current = current;
    return result;
  }

  double dt = dt_nominal;
  while (true) {
    if (elapsed > options.max_step_time) {
      throw ProtocolStallError("step '" + describe(step) + "' ran past its time cap without terminating");
    }
    double h = dt;
    for (std::size_t k = 0; k < step.terminations.size(); ++k) {
      if (step.terminations[k].quantity == Quantity::time) h = std::min(h, limits.value[k] - elapsed);
    }
    h = std::max(h, 1e-9);

    Cell trial = cell;
    double i = current;
    try {
      if (step.mode == StepMode::constant_voltage) {
        i = solve_cv_current(cell, step.setpoint.value, h, current, std::max(std::abs(current) * 0.1, nominal / 1000.0),
                             options.cv_tolerance);
      }
      trial.advance(i, h);
    } catch (const SaturationError&) {
      if (h <= options.dt_min) throw;
      dt = std::max(h / 2.0, options.dt_min);
      continue;
    } catch (const KineticsSingularError&) {
      if (h <= options.dt_min) throw;
      dt = std::max(h / 2.0, options.dt_min);
      continue;
    }
    double v_new;
    try {
      v_new = trial.terminal_voltage(i);
    } catch (const DomainError&) {
      if (h <= options.dt_min) throw;
      dt = std::max(h / 2.0, options.dt_min);
      continue;
    }

    // refine towards a voltage threshold instead of jumping across it
    bool overshoot = false;
    for (std::size_t k = 0; k < step.terminations.size(); ++k) {
      const auto& t = step.terminations[k];
      if (t.quantity != Quantity::voltage || step.mode == StepMode::constant_voltage) continue;
      if (satisfied(t, v_new, limits.value[k]) && std::abs(v_new - limits.value[k]) > options.voltage_tolerance &&
          h > options.dt_min) {
        overshoot = true;
      }
    }
    if (overshoot) {
      dt = std::max(h / 2.0, options.dt_min);
      continue;
    }

    cell = std::move(trial);
    elapsed += h;
    current = i;
    v = v_new;
    result.charge += i * h / 3600.0;
    if (i > 0) result.discharged += i * h / 3600.0;
    record(i, v);
    if (int k = check(elapsed, i, v); k >= 0) {
      result.fired = k;
      break;
    }
  }
  result.duration = elapsed;
  result.final_voltage = v;
  result.final_current = current;
  return result;
}

double pulse_resistance(const Cell& cell, double current, double duration) {
  Cell probe = cell;
  probe.set_aging(false);
  const double before = probe.terminal_voltage(0.0);
  probe.advance(current, duration);
  return (before - probe.terminal_voltage(current)) / current;
}

RptResult run_rpt(const Cell& source, const RptOptions& rpt, const EngineOptions& engine) {
  Cell cell = source;
  cell.set_aging(false);
  const auto& params = cell.model().cell();
  const Amount rate{rpt.c_rate, true};
  EngineOptions options = engine;
  options.dt_active = rpt.dt;
  options.dt_rest = std::max(rpt.dt, engine.dt_rest);

  auto curve_of = [](const std::vector<Sample>& log, bool discharging) {
    measurement::Curve c;
    double q = 0.0;
    for (std::size_t k = 0; k < log.size(); ++k) {
      if (k > 0) q += std::abs(log[k].current) * (log[k].time - log[k - 1].time) / 3600.0;
      if (!c.empty() && q <= c.back().capacity) continue;
      c.push_back({q, log[k].voltage});
    }
    if (discharging) {
      const double total = c.empty() ? 0.0 : c.back().capacity;
      for (auto& p : c) p.capacity = total - p.capacity;
      std::reverse(c.begin(), c.end());
    }
    return c;
  };

  RptResult out;
  run_step(cell, constant_current({-rpt.c_rate, true}, {voltage_at_least(params.v_max)}), options);
  run_step(cell, constant_voltage(params.v_max, {current_at_most({rpt.cutoff_c_rate, true})}), options);
  run_step(cell, rest_for(3600.0), options);

  std::vector<Sample> log;
  const auto dis = run_step(cell, constant_current(rate, {voltage_at_most(params.v_min)}), options, &log);
  out.capacity = dis.discharged;
  out.discharge = curve_of(log, true);
  run_step(cell, rest_for(3600.0), options);

  log.clear();
  const auto chg = run_step(cell, constant_current({-rpt.c_rate, true}, {voltage_at_least(params.v_max)}), options, &log);
  out.charge = curve_of(log, false);
  (void)chg;
  run_step(cell, rest_for(3600.0), options);

  const double pulse_current = rate.resolve(cell.model().nominal_capacity());
  run_step(cell, constant_current(rate, {time_at_least(out.capacity / 2.0 / pulse_current * 3600.0)}), options);
  run_step(cell, rest_for(2.0 * 3600.0), options);
  out.pulse_x = cell.x();
  out.pulse_y = cell.y();
  out.resistance = pulse_resistance(cell, pulse_current, rpt.pulse_duration);
  out.expansion = cell.model().expansion_of(cell.soh());

  out.pseudo_ocv = measurement::average_curves(out.charge, out.discharge);
  if (rpt.extract_esoh) {
    auto curve = out.pseudo_ocv;
    if (rpt.noise_sigma > 0) curve = measurement::add_voltage_noise(curve, rpt.noise_sigma, rpt.seed);
    out.esoh = measurement::extract_esoh(curve, params, rpt.fit);
  }
  return out;
}

}  // namespace deepsoh::protocol
