#include "deepsoh/io/output.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "deepsoh/errors.hpp"

namespace deepsoh::io {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf.data(), ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

template <typename... T>
void row(std::ostream& os, const T&... values) {
  bool first = true;
  auto put = [&](const auto& v) {
    if (!first) os << ',';
    first = false;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) os << format_number(v); else os << v;
  };
  (put(values), ...);
  os << '\n';
}

}  // namespace

void write_samples_csv(const std::filesystem::path& path, const std::vector<protocol::Sample>& samples) {
  auto out = open_out(path);
  out << "time_s,current_a,voltage_v,x,y,cycle,step\n";
  for (const auto& s : samples) row(out, s.time, s.current, s.voltage, s.x, s.y, s.cycle, s.step);
}

void write_cycles_csv(const std::filesystem::path& path, const std::vector<protocol::CycleRecord>& cycles) {
  auto out = open_out(path);
  out << "cycle,time_s,capacity_ah,delta_sei_m,delta_pl_m,capacity_pos_ah,capacity_neg_ah,lli,lli_reconstructed,"
         "resistance_ohm,expansion_m\n";
  for (const auto& c : cycles) {
    row(out, c.cycle, c.time, c.capacity, c.soh.delta_sei, c.soh.delta_pl, c.soh.capacity_pos, c.soh.capacity_neg,
        c.soh.lli, c.reconstructed_lli, c.resistance, c.expansion);
  }
}

void write_curve_csv(const std::filesystem::path& path, const measurement::Curve& curve) {
  auto out = open_out(path);
  out << "capacity_ah,voltage_v\n";
  for (const auto& p : curve) row(out, p.capacity, p.voltage);
}

measurement::Curve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  measurement::Curve curve;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InputError(path.string() + ": expected 'capacity,voltage'", n);
    if (n == 1 && line.find_first_of("abcdfghijklmnopqrstuvwxyz_") != std::string::npos) continue;  // header
    curve.push_back({parse_number(line.substr(0, comma), n), parse_number(line.substr(comma + 1), n)});
  }
  return curve;
}

Json to_json(const degradation::DeepSOH& s) {
  return Json{{"delta_sei_m", s.delta_sei},
              {"delta_pl_m", s.delta_pl},
              {"capacity_pos_ah", s.capacity_pos},
              {"capacity_neg_ah", s.capacity_neg},
              {"lli", s.lli}};
}

degradation::DeepSOH deepsoh_from_json(const Json& j) {
  degradation::DeepSOH s;
  s.delta_sei = j.at("delta_sei_m").get<double>();
  s.delta_pl = j.at("delta_pl_m").get<double>();
  s.capacity_pos = j.at("capacity_pos_ah").get<double>();
  s.capacity_neg = j.at("capacity_neg_ah").get<double>();
  s.lli = j.at("lli").get<double>();
  s.validate();
  return s;
}

Json to_json(const measurement::ESOHRecord& e) {
  return Json{{"capacity_ah", e.capacity}, {"capacity_pos_ah", e.capacity_pos}, {"capacity_neg_ah", e.capacity_neg},
              {"x0", e.x0},           {"x100", e.x100},               {"y0", e.y0},
              {"y100", e.y100},       {"n_li_mol", e.n_li},           {"residual_rms_v", e.residual_rms}};
}

Json rpt_summary(const protocol::RptResult& r) {
  Json j{{"capacity_ah", r.capacity},
         {"resistance_ohm", r.resistance},
         {"pulse_x", r.pulse_x},
         {"pulse_y", r.pulse_y},
         {"expansion_m", r.expansion}};
  if (r.esoh) j["esoh"] = to_json(*r.esoh);
  return j;
}

Json trajectory_summary(const protocol::Trajectory& t) {
  Json cycles = Json::array();
  for (const auto& c : t.cycles) {
    Json row{{"cycle", c.cycle},
             {"time_s", c.time},
             {"capacity_ah", c.capacity},
             {"deepsoh", to_json(c.soh)},
             {"lli_reconstructed", c.reconstructed_lli},
             {"resistance_ohm", c.resistance},
             {"expansion_m", c.expansion}};
    if (c.rpt) row["rpt"] = rpt_summary(*c.rpt);
    cycles.push_back(std::move(row));
  }
  return Json{{"rul_cycles", t.rul_cycles},
              {"reached_eol", t.reached_eol},
              {"end_reason", t.end_reason},
              {"cycles", std::move(cycles)}};
}

Json to_json(const identify::MeasurementVector& y) {
  Json j{{"capacity_pos_ah", y.capacity_pos},
         {"capacity_neg_ah", y.capacity_neg},
         {"lli", y.lli},
         {"resistance_ohm", y.resistance}};
  if (y.expansion) j["expansion_m"] = *y.expansion;
  return j;
}

Json to_json(const identify::IdentificationResult& r) {
  Json j{{"kind", identify::to_string(r.kind)}, {"film_resistance_ohm_m2", r.film_resistance}, {"residual", r.residual}};
  if (r.solution) j["solution"] = to_json(*r.solution);
  if (r.kind == identify::ResultKind::family) {
    j["segment"] = Json{{"sei_end", {{"delta_sei_m", r.segment_start.delta_sei}, {"delta_pl_m", r.segment_start.delta_pl}}},
                        {"plating_end", {{"delta_sei_m", r.segment_end.delta_sei}, {"delta_pl_m", r.segment_end.delta_pl}}}};
  }
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

Json ambiguity_summary(const identify::AmbiguityReport& report) {
  Json members = Json::array();
  for (std::size_t i = 0; i < report.members.size(); ++i) {
    const auto& m = report.members[i];
    const auto& rpt = *m.trajectory.cycles.front().rpt;
    members.push_back(Json{{"member", i},
                           {"initial", to_json(m.initial)},
                           {"measured", to_json(m.measured)},
                           {"initial_rpt", rpt_summary(rpt)},
                           {"recovered", to_json(m.recovered)},
                           {"rul_cycles", m.trajectory.rul_cycles},
                           {"reached_eol", m.trajectory.reached_eol}});
  }
  return Json{{"target", to_json(report.target)},
              {"family", to_json(report.family)},
              {"checks",
               {{"max_curve_gap_v", report.max_curve_gap},
                {"resistance_spread", report.resistance_spread},
                {"min_expansion_gap_m", report.min_expansion_gap},
                {"max_esoh_deviation", report.max_esoh_deviation},
                {"max_recovery_error", report.max_recovery_error},
                {"max_rul_cycles", report.max_rul},
                {"min_rul_gap_fraction", report.min_rul_gap_fraction}}},
              {"members", std::move(members)}};
}

void write_json(const std::filesystem::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

Json state_to_json(const degradation::Cell& cell) {
  auto profile = [](const core::ParticleProfile& p) {
    return std::vector<double>(p.concentrations().begin(), p.concentrations().end());
  };
  return Json{{"format", "deepsoh-state"},
              {"version", state_format_version},
              {"deepsoh", to_json(cell.soh())},
              {"lam_lithium_mol", cell.lam_lithium()},
              {"time_s", cell.time()},
              {"particles", {{"positive", profile(cell.particles().positive)}, {"negative", profile(cell.particles().negative)}}}};
}

degradation::Cell state_from_json(const Json& j, std::shared_ptr<const Model> model) {
  try {
    if (j.at("format") != "deepsoh-state") throw InputError("not a deepsoh state file");
    const int version = j.at("version").get<int>();
    if (version != state_format_version) {
      throw InputError("unsupported state file version " + std::to_string(version));
    }
    const auto soh = deepsoh_from_json(j.at("deepsoh"));
    const auto& cp = model->cell();
    core::ParticleState particles{
        core::ParticleProfile(model->mesh(core::Electrode::positive), cp.positive.max_concentration,
                              j.at("particles").at("positive").get<std::vector<double>>()),
        core::ParticleProfile(model->mesh(core::Electrode::negative), cp.negative.max_concentration,
                              j.at("particles").at("negative").get<std::vector<double>>())};
    return degradation::Cell::restore(std::move(model), soh, std::move(particles),
                                      j.at("lam_lithium_mol").get<double>(), j.at("time_s").get<double>());
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed state file: ") + e.what());
  } catch (const DomainError& e) {
    throw InputError(std::string("invalid state file: ") + e.what());
  }
}

degradation::Cell read_state(const std::filesystem::path& path, std::shared_ptr<const Model> model) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return state_from_json(j, std::move(model));
}

identify::MeasurementVector load_measurement(const ConfigFile& file) {
  SectionReader r(file, "measurement");
  identify::MeasurementVector y;
  y.capacity_pos = r.number("capacity_pos");
  y.capacity_neg = r.number("capacity_neg");
  y.lli = r.number("lli");
  y.resistance = r.number("resistance");
  if (r.find("expansion")) y.expansion = r.number("expansion");
  r.finish();
  try {
    y.validate();
  } catch (const DomainError& e) {
    throw InputError(std::string("[measurement] ") + e.what());
  }
  return y;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

void write_manifest(const std::filesystem::path& directory, const RunManifest& m) {
  auto listing = [](const std::vector<std::filesystem::path>& files) {
    Json a = Json::array();
    for (const auto& f : files) {
      a.push_back(Json{{"path", f.string()},
                       {"bytes", std::filesystem::file_size(f)},
                       {"sha256", sha256_file(f)}});
    }
    return a;
  };
  const auto now = std::chrono::system_clock::now();
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  write_json(directory / "manifest.json", Json{{"tool", "deepsoh"},
                                               {"version", tool_version},
                                               {"command", m.command},
                                               {"seed", m.seed},
                                               {"wall_clock_unix_s", seconds},
                                               {"inputs", listing(m.inputs)},
                                               {"outputs", listing(m.outputs)}});
}

}  // namespace deepsoh::io
