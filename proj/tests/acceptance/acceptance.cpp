// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/core/window.hpp"
#include "deepsoh/degradation/cell.hpp"
#include "deepsoh/identify/experiment.hpp"
#include "deepsoh/measurement/esoh.hpp"
#include "deepsoh/measurement/resistance.hpp"
#include "support.hpp"

using namespace deepsoh;
using degradation::Cell;
using degradation::DeepSOH;
using testing::rel;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

protocol::Campaign campaign_of(int cycles, double eol) {
  auto c = testing::demo_protocol().campaign;
  c.max_cycles = cycles;
  c.eol_capacity_fraction = eol;
  return c;
}

protocol::CampaignOptions no_rpt(double dt_active = 10.0, double dt_rest = 60.0) {
  protocol::CampaignOptions o;
  o.run_rpts = false;
  o.engine.dt_active = dt_active;
  o.engine.dt_rest = dt_rest;
  return o;
}

identify::AmbiguityReport& ambiguity_report(double* seconds = nullptr) {
  static identify::AmbiguityReport report;
  static double elapsed = -1.0;
  if (elapsed < 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    identify::AmbiguityConfig cfg;  // 3 members
    report = identify::ambiguity_experiment(testing::demo_model(), cfg, testing::demo_protocol().campaign);
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  if (seconds) *seconds = elapsed;
  return report;
}

void ambiguity(Outcome& o) {
  double seconds = 0.0;
  const auto& r = ambiguity_report(&seconds);
  o.require(r.members.size() == 3, "three members");
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    for (std::size_t j = i + 1; j < r.members.size(); ++j) {
      const auto& a = r.members[i].initial;
      const auto& b = r.members[j].initial;
      o.require(a.delta_sei != b.delta_sei && a.delta_pl != b.delta_pl, "distinct film split");
      const int ra = r.members[i].trajectory.rul_cycles, rb = r.members[j].trajectory.rul_cycles;
      o.require(std::abs(ra - rb) > 0.1 * r.max_rul, "pairwise RUL gap > 10% of max");
    }
    o.require(r.members[i].trajectory.reached_eol, "member reaches end of life");
  }
  o.require(r.max_curve_gap < 5e-3, "C/20 curve gap < 5 mV");
  o.require(r.resistance_spread < 5e-3, "R_s spread < 0.5%");
  o.require(seconds < 300.0, "runtime < 5 min");
  o.detail << "curve gap " << r.max_curve_gap * 1e3 << " mV, R_s spread " << r.resistance_spread * 100
           << " %, eSOH deviation " << r.max_esoh_deviation * 100 << " %, RULs";
  for (const auto& m : r.members) o.detail << ' ' << m.trajectory.rul_cycles;
  o.detail << ", min gap " << r.min_rul_gap_fraction * 100 << " % of max, " << seconds << " s";
}

void expansion(Outcome& o) {
  const auto& r = ambiguity_report();
  auto model = testing::demo_model();
  double worst = 0.0, min_gap = 1e300;
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    for (std::size_t j = i + 1; j < r.members.size(); ++j) {
      min_gap = std::min(min_gap, std::abs(r.members[i].trajectory.cycles.front().expansion -
                                           r.members[j].trajectory.cycles.front().expansion));
    }
    const auto& m = r.members[i];
    const auto inv = identify::invert_with_expansion(*model, identify::measure(*model, m.initial));
    o.require(inv.kind == identify::ResultKind::unique, "unique inversion");
    if (inv.solution) {
      worst = std::max({worst, rel(inv.solution->delta_sei, m.initial.delta_sei),
                        rel(inv.solution->delta_pl, m.initial.delta_pl)});
    }
  }
  o.require(min_gap > 0.0, "pairwise distinct expansion at cycle 0");
  o.require(worst < 1e-3, "film recovery within 0.1%");
  o.detail << "min expansion gap " << min_gap * 1e6 << " um, worst film error " << worst;
}

void round_trip(Outcome& o) {
  auto model = testing::demo_model();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sei(10e-9, 500e-9), pl(2e-9, 100e-9), cp(6.4, 7.5), cn(4.9, 5.8),
      extra(0.0, 0.1);
  int infeasible = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    DeepSOH truth{sei(rng), pl(rng), cp(rng), cn(rng), 0.0};
    truth.lli = model->film_lithium(truth) / model->initial_inventory() + extra(rng);
    try {
      const auto r = identify::invert_with_expansion(*model, identify::measure(*model, truth));
      if (r.kind != identify::ResultKind::unique) {
        ++infeasible;
        continue;
      }
      const auto& s = *r.solution;
      worst = std::max({worst, rel(s.delta_sei, truth.delta_sei), rel(s.delta_pl, truth.delta_pl),
                        rel(s.capacity_pos, truth.capacity_pos), rel(s.capacity_neg, truth.capacity_neg),
                        rel(s.lli, truth.lli)});
    } catch (const Error& e) {
      ++infeasible;
    }
  }
  o.require(infeasible == 0, "no false infeasible verdicts");
  o.require(worst < 5e-3, "all components within 0.5%");
  o.detail << "100 states, worst relative error " << worst << ", failed inversions " << infeasible;
}

void bookkeeping(Outcome& o) {
  auto model = testing::demo_model();
  const auto t = protocol::run_campaign(Cell::pristine(model), campaign_of(100, 0.05), no_rpt());
  o.require(t.cycles.size() == 101, "100 cycles completed");
  double worst = 0.0;
  for (const auto& c : t.cycles) {
    if (c.soh.lli > 0) worst = std::max(worst, rel(c.reconstructed_lli, c.soh.lli));
  }
  o.require(worst < 1e-5, "integrated and reconstructed LLI within 1e-5");
  o.require(t.cycles.back().soh.lli > 0.0, "LLI grows");
  o.detail << "final LLI " << t.cycles.back().soh.lli << ", worst mismatch " << worst;
}

void esoh(Outcome& o) {
  const auto params = testing::demo_parameters();
  const double n0 = core::pristine_lithium_inventory(params.cell);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> cp(6.6, 7.8), cn(5.0, 6.0), lli(0.0, 0.2);
  double clean = 0.0, noisy = 0.0;
  int failed = 0;
  for (int k = 0; k < 50; ++k) {
    const auto t = measurement::esoh_from_balance(params.cell, cp(rng), cn(rng), n0 * (1 - lli(rng)));
    const auto curve = measurement::synthesize_ocv_curve(params.cell, t.capacity_pos, t.capacity_neg, t.x0, t.y0,
                                                         t.capacity);
    auto worst = [&](const measurement::ESOHRecord& r) {
      return std::max({rel(r.capacity_pos, t.capacity_pos), rel(r.capacity_neg, t.capacity_neg), rel(r.x0, t.x0),
                       rel(r.y0, t.y0)});
    };
    try {
      clean = std::max(clean, worst(measurement::extract_esoh(curve, params.cell)));
      noisy = std::max(noisy, worst(measurement::extract_esoh(measurement::add_voltage_noise(curve, 1e-3, 1000 + k),
                                                              params.cell)));
    } catch (const Error&) {
      ++failed;
    }
  }
  o.require(failed == 0, "every extraction converges");
  o.require(clean < 0.01, "clean within 1%");
  o.require(noisy < 0.02, "1 mV noise within 2%");
  o.detail << "50 cells, worst clean " << clean * 100 << " %, worst noisy " << noisy * 100 << " %";
}

void resistance(Outcome& o) {
  auto model = testing::demo_model();
  const auto& d = model->degradation();
  const DeepSOH aged{300e-9, 25e-9, 7.3, 5.5, 0.15};
  double worst = 0.0, split = 0.0;
  for (double soc : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto cell = Cell::at_state(model, aged, soc);
    const double pulse = protocol::pulse_resistance(cell, model->probe_current(), 0.01);
    const double closed = measurement::instantaneous_resistance(model->cell(), aged, {cell.x(), cell.y()},
                                                                model->probe_current(), d.sei.conductivity,
                                                                d.plating.conductivity, model->film_area());
    worst = std::max(worst, rel(pulse, closed));
    DeepSOH bare = aged;
    bare.delta_sei = bare.delta_pl = 0.0;
    const double without = measurement::instantaneous_resistance(model->cell(), bare, {cell.x(), cell.y()},
                                                                 model->probe_current(), d.sei.conductivity,
                                                                 d.plating.conductivity, model->film_area());
    split = std::max(split, std::abs((closed - without) - model->film_resistance(aged)) / model->film_resistance(aged));
  }
  o.require(worst < 0.02, "pulse vs closed form within 2%");
  o.require(split < 1e-12, "R_s - kinetic term = R_film");
  o.detail << "5 SOC points, worst pulse mismatch " << worst * 100 << " %, decomposition error " << split;
}

void hygiene(Outcome& o) {
  auto model = testing::demo_model();
  const auto coarse = protocol::run_campaign(Cell::pristine(model), campaign_of(20, 0.05), no_rpt(10.0, 60.0));
  const auto fine = protocol::run_campaign(Cell::pristine(model), campaign_of(20, 0.05), no_rpt(5.0, 30.0));
  const double dt_change = rel(coarse.cycles.back().soh.lli, fine.cycles.back().soh.lli);
  o.require(dt_change < 5e-3, "time-step halving < 0.5% in LLI");

  auto params = testing::demo_parameters();
  double surface[2][2];
  for (int k = 0; k < 2; ++k) {
    params.cell.radial_shells = k == 0 ? 20 : 40;
    auto m = Model::create(params);
    auto cell = Cell::pristine(m, 1.0);
    for (int i = 0; i < 360; ++i) cell.advance(m->c_rate(0.2), 10.0);
    surface[k][0] = cell.particles().positive.surface();
    surface[k][1] = cell.particles().negative.surface();
  }
  const double mesh_change = std::max(rel(surface[0][0], surface[1][0]), rel(surface[0][1], surface[1][1]));
  o.require(mesh_change < 2e-3, "mesh halving < 0.2% in c_ss");

  const auto& sei = model->degradation().sei;
  const double temp = model->cell().temperature;
  double fd_worst = 0.0;
  const double pts[][2] = {{1e-9, 0.0}, {2e-8, -0.1}, {1e-7, 0.1}, {4e-7, -0.2}, {1e-6, 0.05}};
  for (const auto& p : pts) {
    const double h = 1e-4 * p[0];
    const double fd = (degradation::sei_flux(sei, temp, p[0] + h, p[1]) - degradation::sei_flux(sei, temp, p[0] - h, p[1])) /
                      (2 * h);
    fd_worst = std::max(fd_worst, rel(degradation::sei_flux_thickness_derivative(sei, temp, p[0], p[1]), fd));
  }
  o.require(fd_worst < 1e-4, "SEI flux derivative within 1e-4");
  o.detail << "dt halving " << dt_change * 100 << " %, mesh halving " << mesh_change * 100 << " %, derivative "
           << fd_worst;
}

void isolation(Outcome& o) {
  auto no_plating = testing::demo_parameters();
  no_plating.degradation.plating.rate_constant = 0.0;
  const auto a = protocol::run_campaign(Cell::pristine(Model::create(no_plating)), campaign_of(20, 0.05), no_rpt());
  bool plating_zero = true;
  for (const auto& c : a.cycles) plating_zero = plating_zero && c.soh.delta_pl == 0.0;
  o.require(plating_zero, "k_pl = 0 keeps delta_pl at 0");

  auto no_lam = testing::demo_parameters();
  auto& l = no_lam.degradation.lam;
  l.beta1_pos = l.beta2_pos = l.beta1_neg = l.beta2_neg = 0.0;
  const auto b = protocol::run_campaign(Cell::pristine(Model::create(no_lam)), campaign_of(20, 0.05), no_rpt());
  bool capacities_fixed = true;
  for (const auto& c : b.cycles) {
    capacities_fixed = capacities_fixed && c.soh.capacity_pos == no_lam.cell.positive.nominal_capacity &&
                       c.soh.capacity_neg == no_lam.cell.negative.nominal_capacity;
  }
  o.require(capacities_fixed, "betas = 0 keep C_p and C_n fixed");

  const auto inert = Model::create(testing::inert_parameters());
  const auto c = protocol::run_campaign(Cell::pristine(inert), campaign_of(50, 0.05), no_rpt());
  o.require(c.cycles.size() == 51, "50 cycles");
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 1; i < c.cycles.size(); ++i) {
    lo = std::min(lo, c.cycles[i].capacity);
    hi = std::max(hi, c.cycles[i].capacity);
  }
  o.require((hi - lo) / hi < 1e-3, "inert capacity flat within 0.1%");
  o.detail << "inert capacity range " << (hi - lo) / hi * 100 << " % over 50 cycles";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"ambiguity reproduction", ambiguity},
      {"expansion disambiguation", expansion},
      {"inversion round trip", round_trip},
      {"LLI dual bookkeeping", bookkeeping},
      {"eSOH extraction round trip", esoh},
      {"resistance model consistency", resistance},
      {"numerical hygiene", hygiene},
      {"mechanism isolation", isolation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
