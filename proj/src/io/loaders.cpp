#include "deepsoh/io/loaders.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "deepsoh/errors.hpp"

namespace deepsoh::io {

namespace {

core::ElectrodeParameters electrode(const ConfigFile& file, const std::string& name) {
  SectionReader r(file, name);
  core::ElectrodeParameters p;
  p.thickness = r.number("thickness");
  p.particle_radius = r.number("particle_radius");
  p.max_concentration = r.number("max_concentration");
  p.diffusivity = r.number("diffusivity");
  p.rate_constant = r.number("rate_constant");
  p.nominal_capacity = r.number("nominal_capacity");
  const auto table = r.path("ocp_table");
  try {
    p.ocp = core::OcpTable::load(table, name);
  } catch (const Error& e) {
    const auto* entry = r.find("ocp_table");
    throw InputError("[" + name + "] ocp_table: " + e.what(), entry ? entry->line : 0);
  }
  r.finish();
  return p;
}

}  // namespace

ModelParameters load_model_parameters(const ConfigFile& file) {
  ModelParameters m;
  {
    SectionReader r(file, "cell");
    auto& c = m.cell;
    c.area = r.number("area");
    c.alpha = r.number_or("alpha", 0.5);
    c.electrolyte_concentration = r.number("electrolyte_concentration");
    c.temperature = r.number_or("temperature", 298.15);
    c.v_max = r.number("v_max");
    c.v_min = r.number("v_min");
    c.initial_x100 = r.number("initial_x100");
    c.radial_shells = r.integer_or("radial_shells", 20);
    r.finish();
  }
  m.cell.positive = electrode(file, "positive");
  m.cell.negative = electrode(file, "negative");
  {
    SectionReader r(file, "sei");
    auto& s = m.degradation.sei;
    s.rate_constant = r.number("rate_constant");
    s.alpha = r.number_or("alpha", 0.5);
    s.potential = r.number("potential");
    s.solvent_concentration = r.number("solvent_concentration");
    s.diffusivity = r.number("diffusivity");
    s.molar_volume = r.number("molar_volume");
    s.conductivity = r.number("conductivity");
    r.finish();
  }
  {
    SectionReader r(file, "plating");
    auto& p = m.degradation.plating;
    p.rate_constant = r.number("rate_constant");
    p.alpha = r.number_or("alpha", 0.5);
    p.molar_volume = r.number("molar_volume");
    p.conductivity = r.number("conductivity");
    r.finish();
  }
  {
    SectionReader r(file, "lam");
    auto& l = m.degradation.lam;
    l.beta1_pos = r.number_or("beta1_pos", 0.0);
    l.beta2_pos = r.number_or("beta2_pos", 0.0);
    l.beta1_neg = r.number_or("beta1_neg", 0.0);
    l.beta2_neg = r.number_or("beta2_neg", 0.0);
    l.critical_stress_pos = r.number("critical_stress_pos");
    l.critical_stress_neg = r.number("critical_stress_neg");
    l.exponent = r.number_or("exponent", 2.0);
    l.stress_gain_pos = r.number("stress_gain_pos");
    l.stress_gain_neg = r.number("stress_gain_neg");
    r.finish();
  }
  {
    SectionReader r(file, "expansion");
    auto& e = m.expansion;
    e.b_sei = r.number("b_sei");
    e.b_pl = r.number("b_pl");
    e.b_in_pos = r.number("b_in_pos");
    e.b_in_neg = r.number("b_in_neg");
    r.finish();
  }
  for (const auto& s : file.sections()) {
    static const std::vector<std::string> known = {"cell", "positive", "negative", "sei",  "plating",
                                                   "lam",  "expansion", "run",     "ambiguity"};
    if (std::find(known.begin(), known.end(), s.name) == known.end()) {
      throw InputError("unknown section [" + s.name + "]", s.line);
    }
  }
  return m;
}

RunSettings load_run_settings(const ConfigFile& file) {
  SectionReader r(file, "run", false);
  RunSettings s;
  const double seed = r.number_or("seed", 1.0);
  if (seed < 0 || seed != static_cast<double>(static_cast<std::uint64_t>(seed))) {
    throw InputError("[run] seed must be a non-negative integer");
  }
  s.seed = static_cast<std::uint64_t>(seed);
  s.esoh_noise = r.number_or("esoh_noise", 0.0);
  if (s.esoh_noise < 0) throw InputError("[run] esoh_noise must be non-negative");
  r.finish();
  return s;
}

identify::AmbiguityConfig load_ambiguity_config(const ConfigFile& file) {
  SectionReader r(file, "ambiguity", false);
  identify::AmbiguityConfig a;
  a.members = r.integer_or("members", a.members);
  a.capacity_pos_fraction = r.number_or("capacity_pos_fraction", a.capacity_pos_fraction);
  a.capacity_neg_fraction = r.number_or("capacity_neg_fraction", a.capacity_neg_fraction);
  a.lli = r.number_or("lli", a.lli);
  a.sei_thickness = r.number_or("sei_thickness", a.sei_thickness);
  a.lli_budget = r.flag_or("lli_budget", a.lli_budget);
  r.finish();
  try {
    a.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("[ambiguity] ") + e.what());
  }
  return a;
}

namespace {

// "C/5", "0.2C", "2 A", "2A"
protocol::Amount parse_amount(std::vector<std::string>& tokens, std::size_t& k, const char* unit, int line) {
  if (k >= tokens.size()) throw InputError("expected a value", line);
  std::string t = tokens[k++];
  if (t.rfind("C/", 0) == 0) {
    const double d = parse_number(t.substr(2), line);
    if (!(d > 0)) throw InputError("C-rate divisor must be positive", line);
    return {1.0 / d, true};
  }
  if (t.size() > 1 && t.back() == 'C') return {parse_number(t.substr(0, t.size() - 1), line), true};
  const std::string u(unit);
  if (t.size() > u.size() && t.compare(t.size() - u.size(), u.size(), u) == 0) {
    return {parse_number(t.substr(0, t.size() - u.size()), line), false};
  }
  const double v = parse_number(t, line);
  if (k < tokens.size() && tokens[k] == u) ++k;
  return {v, false};
}

double parse_duration(std::vector<std::string>& tokens, std::size_t& k, int line) {
  if (k >= tokens.size()) throw InputError("expected a duration", line);
  std::string t = tokens[k++];
  auto scale_of = [&](const std::string& u) -> double {
    if (u == "s") return 1.0;
    if (u == "min") return 60.0;
    if (u == "h") return 3600.0;
    return 0.0;
  };
  for (const char* u : {"min", "s", "h"}) {
    const std::string su(u);
    if (t.size() > su.size() && t.compare(t.size() - su.size(), su.size(), su) == 0) {
      const std::string head = t.substr(0, t.size() - su.size());
      if (head.find_first_not_of("0123456789.eE+-") == std::string::npos) {
        return parse_number(head, line) * scale_of(su);
      }
    }
  }
  const double v = parse_number(t, line);
  if (k < tokens.size() && scale_of(tokens[k]) > 0) return v * scale_of(tokens[k++]);
  throw InputError("duration '" + t + "' needs a unit (s, min, h)", line);
}

std::vector<std::string> tokenize(std::string text) {
  std::string spaced;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((text[i] == '<' || text[i] == '>') && i + 1 < text.size() && text[i + 1] == '=') {
      spaced += ' ';
      spaced += text[i];
      spaced += "= ";
      ++i;
    } else {
      spaced += text[i];
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

protocol::ProtocolStep parse_step(const std::string& text, int line) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw InputError("empty step", line);
  protocol::ProtocolStep step;
  std::size_t k = 1;
  const std::string& verb = tokens[0];
  if (verb == "discharge" || verb == "charge") {
    step.mode = protocol::StepMode::constant_current;
    step.setpoint = parse_amount(tokens, k, "A", line);
    if (!(step.setpoint.value > 0)) throw InputError("current setpoint must be positive", line);
    if (verb == "charge") step.setpoint.value = -step.setpoint.value;
  } else if (verb == "hold") {
    step.mode = protocol::StepMode::constant_voltage;
    step.setpoint = parse_amount(tokens, k, "V", line);
    if (step.setpoint.c_rate) throw InputError("hold needs a voltage setpoint", line);
  } else if (verb == "rest") {
    step.mode = protocol::StepMode::rest;
    if (k < tokens.size() && tokens[k] != "until") step.terminations.push_back(
        protocol::time_at_least(parse_duration(tokens, k, line)));
  } else {
    throw InputError("unknown step kind '" + verb + "' (expected discharge, charge, hold or rest)", line);
  }

  if (k < tokens.size()) {
    if (tokens[k] != "until") throw InputError("expected 'until', got '" + tokens[k] + "'", line);
    ++k;
    while (true) {
      if (k + 1 >= tokens.size()) throw InputError("incomplete termination condition", line);
      protocol::Termination t;
      const std::string q = tokens[k++];
      const std::string op = tokens[k++];
      if (op == "<=") t.comparator = protocol::Comparator::at_most;
      else if (op == ">=") t.comparator = protocol::Comparator::at_least;
      else throw InputError("expected <= or >=, got '" + op + "'", line);
      if (q == "V") {
        t.quantity = protocol::Quantity::voltage;
        t.threshold = parse_amount(tokens, k, "V", line);
        if (t.threshold.c_rate) throw InputError("voltage threshold cannot be a C-rate", line);
      } else if (q == "I") {
        t.quantity = protocol::Quantity::current;
        t.threshold = parse_amount(tokens, k, "A", line);
      } else if (q == "t") {
        t.quantity = protocol::Quantity::time;
        if (t.comparator != protocol::Comparator::at_least) throw InputError("time limits must use >=", line);
        t.threshold = {parse_duration(tokens, k, line), false};
      } else {
        throw InputError("unknown quantity '" + q + "' (expected V, I or t)", line);
      }
      step.terminations.push_back(t);
      if (k == tokens.size()) break;
      if (tokens[k] != "or") throw InputError("expected 'or' between conditions, got '" + tokens[k] + "'", line);
      ++k;
    }
  }
  try {
    step.validate();
  } catch (const InputError& e) {
    throw InputError(e.what(), line);
  }
  return step;
}

ProtocolFile load_protocol(const ConfigFile& file) {
  ProtocolFile out;
  {
    SectionReader r(file, "campaign");
    auto& c = out.campaign;
    c.rpt_every = r.integer_or("rpt_every", c.rpt_every);
    c.eol_capacity_fraction = r.number_or("eol_capacity_fraction", c.eol_capacity_fraction);
    c.max_cycles = r.integer_or("max_cycles", c.max_cycles);
    out.engine.dt_active = r.number_or("dt_active", out.engine.dt_active);
    out.engine.dt_rest = r.number_or("dt_rest", out.engine.dt_rest);
    if (!(out.engine.dt_active > 0 && out.engine.dt_rest > 0)) throw InputError("[campaign] time steps must be positive");
    r.finish();
  }
  const auto* cycle = file.section("cycle");
  if (!cycle) throw InputError("missing section [cycle]");
  for (const auto& e : cycle->entries) {
    if (e.key != "step") throw InputError("[cycle] unknown key '" + e.key + "'", e.line);
    out.campaign.cycle.push_back(parse_step(e.value, e.line));
  }
  for (const auto& s : file.sections()) {
    if (s.name != "campaign" && s.name != "cycle") throw InputError("unknown section [" + s.name + "]", s.line);
  }
  try {
    out.campaign.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("protocol: ") + e.what(), cycle->line);
  }
  return out;
}

}  // namespace deepsoh::io
