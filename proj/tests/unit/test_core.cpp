#include <doctest.h>

#include <cmath>
#include <random>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/core/kinetics.hpp"
#include "deepsoh/core/voltage.hpp"
#include "deepsoh/core/window.hpp"
#include "deepsoh/degradation/cell.hpp"
#include "deepsoh/errors.hpp"
#include "deepsoh/protocol/engine.hpp"
#include "support.hpp"

using namespace deepsoh;
using core::Electrode;
using testing::rel;

namespace {

// surface concentration of a sphere under constant outward flux, from the
// eigenfunction series (roots of tan a = a)
double series_surface(double c0, double flux, double radius, double diffusivity, double t) {
  const double tau = diffusivity * t / (radius * radius);
  double sum = 0.0;
  for (int n = 1; n <= 400; ++n) {
    double lo = n * M_PI + 1e-12, hi = n * M_PI + M_PI / 2 - 1e-12;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (std::tan(mid) - mid < 0) lo = mid; else hi = mid;
    }
    const double a = 0.5 * (lo + hi);
    sum += std::exp(-a * a * tau) / (a * a);
  }
  return c0 - flux * radius / diffusivity * (3.0 * tau + 0.2 - 2.0 * sum);
}

core::ParticleProfile run_flux(int shells, double dt, double seconds, double flux) {
  auto mesh = std::make_shared<const core::RadialMesh>(shells, 5.86e-6);
  core::ParticleProfile p(mesh, 33133, 0.5 * 33133);
  for (double t = 0; t < seconds - 1e-9; t += dt) p = core::step_particle_diffusion(p, 1.5e-13, flux, dt);
  return p;
}

}  // namespace

TEST_CASE("ocp is exact at knots, brackets between them and rejects out-of-range stoichiometry") {
  const auto params = testing::demo_parameters();
  const auto& neg = params.cell.negative.ocp;
  for (std::size_t i = 0; i < neg.knots().size(); i += 7) {
    CHECK(neg(neg.knots()[i]) == neg.values()[i]);
  }
  const auto& pos = params.cell.positive.ocp;
  const auto& k = pos.knots();
  const auto it = std::upper_bound(k.begin(), k.end(), 0.5);
  const std::size_t hi = static_cast<std::size_t>(it - k.begin());
  const double v = params.cell.ocp(Electrode::positive, 0.5);
  if (k[hi - 1] < 0.5) {
    CHECK(v < pos.values()[hi - 1]);
    CHECK(v > pos.values()[hi]);
  }
  try {
    params.cell.ocp(Electrode::negative, 1.05);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("negative") != std::string::npos);
  }
}

TEST_CASE("ocp interpolant is monotone between knots and inverse round-trips") {
  const auto params = testing::demo_parameters();
  for (Electrode e : {Electrode::positive, Electrode::negative}) {
    double prev = params.cell.ocp(e, 0.0);
    for (int i = 1; i <= 5000; ++i) {
      const double v = params.cell.ocp(e, i / 5000.0);
      CHECK(v < prev);
      prev = v;
    }
    const auto& table = params.cell.electrode(e).ocp;
    for (double s : {0.05, 0.3, 0.77}) CHECK(table.inverse(table(s)) == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("ocp tables must be strictly monotone") {
  CHECK_THROWS_AS(core::OcpTable({0.0, 0.5, 1.0}, {1.0, 1.2, 0.5}, "bad"), InputError);
  CHECK_THROWS_AS(core::OcpTable({0.0, 0.5, 0.5}, {1.0, 0.8, 0.5}, "bad"), InputError);
  CHECK_THROWS_AS(core::OcpTable({-0.1, 0.5, 1.0}, {1.0, 0.8, 0.5}, "bad"), InputError);
}

TEST_CASE("cell parameter invariants are enforced") {
  auto p = testing::demo_parameters();
  p.cell.alpha = 1.0;
  CHECK_THROWS_AS(p.cell.validate(), DomainError);
  p = testing::demo_parameters();
  p.cell.v_min = p.cell.v_max;
  CHECK_THROWS_AS(p.cell.validate(), DomainError);
  p = testing::demo_parameters();
  p.cell.positive.diffusivity = 0.0;
  CHECK_THROWS_AS(p.cell.validate(), DomainError);
  p = testing::demo_parameters();
  CHECK_NOTHROW(p.cell.validate());
}

TEST_CASE("diffusion without flux keeps a uniform profile") {
  auto mesh = std::make_shared<const core::RadialMesh>(20, 5e-6);
  core::ParticleProfile p(mesh, 30000, 12345.0);
  const auto q = core::step_particle_diffusion(p, 1e-14, 0.0, 3600.0);
  for (double c : q.concentrations()) CHECK(std::abs(c - 12345.0) < 1e-8);
}

TEST_CASE("constant flux changes the mean by 3 f dt / r and conserves mass") {
  auto mesh = std::make_shared<const core::RadialMesh>(20, 5e-6);
  core::ParticleProfile p(mesh, 30000, 15000.0);
  const double f = 2e-5, dt = 1.0;
  const auto q = core::step_particle_diffusion(p, 1e-14, f, dt);
  CHECK(q.average() - p.average() == doctest::Approx(-3.0 * f * dt / 5e-6).epsilon(1e-8));
  const double moved = f * mesh->radius * mesh->radius * dt;
  CHECK(std::abs((p.reduced_moles() - q.reduced_moles()) - moved) / moved < 1e-8);
}

TEST_CASE("mass drift over 1000 random flux steps stays below 1e-6") {
  auto mesh = std::make_shared<const core::RadialMesh>(20, 5.86e-6);
  core::ParticleProfile p(mesh, 33133, 0.5 * 33133);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> flux(-2e-6, 2e-6), step(0.5, 30.0);
  double expected = p.reduced_moles();
  for (int i = 0; i < 1000; ++i) {
    const double f = flux(rng), dt = step(rng);
    p = core::step_particle_diffusion(p, 1.5e-13, f, dt);
    expected -= f * mesh->radius * mesh->radius * dt;
  }
  CHECK(std::abs(p.reduced_moles() - expected) / expected < 1e-6);
}

TEST_CASE("a step that would saturate a node throws instead of clamping") {
  auto mesh = std::make_shared<const core::RadialMesh>(20, 5e-6);
  core::ParticleProfile p(mesh, 30000, 100.0);
  CHECK_THROWS_AS(core::step_particle_diffusion(p, 1e-14, 1e-3, 10.0), SaturationError);
  CHECK_THROWS_AS(core::step_particle_diffusion(p, 1e-14, 0.0, 0.0), DomainError);
}

TEST_CASE("surface concentration matches a 10x finer mesh and the series solution") {
  const double f = 2e-5;  // about 1C on the demo negative particle
  for (double t : {60.0, 600.0}) {
    const auto coarse = run_flux(20, 0.5, t, f);
    const auto fine = run_flux(200, 0.05, t, f);
    CHECK(rel(coarse.surface(), fine.surface()) < 0.005);
    const double exact = series_surface(0.5 * 33133, f, 5.86e-6, 1.5e-13, t);
    CHECK(rel(fine.surface(), exact) < 0.005);
  }
}

TEST_CASE("halving the radial mesh changes the surface concentration by less than 0.2% on a C/5 step") {
  auto params = testing::demo_parameters();
  double surface[2][2];
  for (int k = 0; k < 2; ++k) {
    params.cell.radial_shells = k == 0 ? 20 : 40;
    auto model = Model::create(params);
    auto cell = degradation::Cell::pristine(model, 1.0);
    cell.set_aging(false);
    for (int i = 0; i < 360; ++i) cell.advance(model->c_rate(0.2), 10.0);
    surface[k][0] = cell.particles().positive.surface();
    surface[k][1] = cell.particles().negative.surface();
  }
  CHECK(rel(surface[0][0], surface[1][0]) < 0.002);
  CHECK(rel(surface[0][1], surface[1][1]) < 0.002);
}

TEST_CASE("exchange current density") {
  const auto p = testing::demo_parameters().cell;
  const double cmax = p.negative.max_concentration;
  CHECK(core::exchange_current_density(p, Electrode::negative, 0.0) == 0.0);
  CHECK(core::exchange_current_density(p, Electrode::negative, cmax) == 0.0);
  const double oracle = p.negative.rate_constant * std::sqrt(p.electrolyte_concentration * cmax / 2 * cmax / 2);
  CHECK(core::exchange_current_density(p, Electrode::negative, cmax / 2) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK_THROWS_AS(core::exchange_current_density(p, Electrode::negative, 1.01 * cmax), DomainError);
}

TEST_CASE("intercalation overpotential: zero, odd, monotone and linearised slope") {
  const auto p = testing::demo_parameters().cell;
  const double css = 0.4 * p.negative.max_concentration;
  const double cap = p.negative.nominal_capacity;
  CHECK(core::intercalation_overpotential(p, Electrode::negative, 0.0, css, cap) == 0.0);
  for (double i : {0.1, 1.0, 10.0}) {
    const double up = core::intercalation_overpotential(p, Electrode::negative, i, css, cap);
    const double down = core::intercalation_overpotential(p, Electrode::negative, -i, css, cap);
    CHECK(up == doctest::Approx(-down).epsilon(1e-14));
    CHECK(up > 0);
  }
  double prev = 0.0;
  for (double i = 0.5; i < 50; i *= 1.5) {
    const double eta = std::abs(core::intercalation_overpotential(p, Electrode::positive, i, 0.5 * p.positive.max_concentration,
                                                                  p.positive.nominal_capacity));
    CHECK(eta > prev);
    prev = eta;
  }
  const double h = 1e-6;
  const double slope = (core::intercalation_overpotential(p, Electrode::negative, h, css, cap) -
                        core::intercalation_overpotential(p, Electrode::negative, -h, css, cap)) /
                       (2 * h);
  const double gamma = core::kinetic_gamma(p, Electrode::negative, css, cap);
  const double linear = constants::gas_constant * p.temperature * gamma / ((1 - p.alpha) * constants::faraday);
  CHECK(rel(slope, linear) < 1e-6);
  CHECK_THROWS_AS(core::intercalation_overpotential(p, Electrode::negative, 1.0, 0.0, cap), KineticsSingularError);
}

TEST_CASE("terminal voltage at rest equals U+(y) - U-(x); discharge sits below it") {
  auto model = testing::demo_model();
  auto cell = degradation::Cell::pristine(model, 0.5);
  const double ocv = model->cell().ocp(Electrode::positive, cell.y()) - model->cell().ocp(Electrode::negative, cell.x());
  CHECK(cell.terminal_voltage(0.0) == doctest::Approx(ocv).epsilon(1e-14));
  CHECK(cell.terminal_voltage(model->c_rate(1.0)) < ocv);
  CHECK(cell.terminal_voltage(-model->c_rate(1.0)) > ocv);
}

TEST_CASE("C/100 discharge stays within 2 mV of the open-circuit voltage at the mean stoichiometries") {
  auto model = testing::demo_model();
  auto cell = degradation::Cell::pristine(model, 1.0);
  cell.set_aging(false);
  std::vector<protocol::Sample> log;
  protocol::run_step(cell, protocol::constant_current({0.01, true}, {protocol::voltage_at_most(model->cell().v_min)}),
                     {60.0, 60.0}, &log);
  REQUIRE(log.size() > 100);
  double worst = 0.0;
  for (const auto& s : log) {
    worst = std::max(worst, std::abs(s.voltage - core::open_circuit_voltage(model->cell(), s.x, s.y)));
  }
  CHECK(worst < 2e-3);
}

TEST_CASE("C/20 discharge curve is within 5 mV of a fine-mesh, fine-step reference") {
  auto params = testing::demo_parameters();
  auto run = [&](int shells, double dt) {
    params.cell.radial_shells = shells;
    auto model = Model::create(params);
    auto cell = degradation::Cell::pristine(model, 1.0);
    cell.set_aging(false);
    std::vector<protocol::Sample> log;
    protocol::EngineOptions o;
    o.dt_active = dt;
    protocol::run_step(cell, protocol::constant_current({0.05, true}, {protocol::voltage_at_most(params.cell.v_min)}), o,
                       &log);
    return log;
  };
  const auto coarse = run(20, 30.0);
  const auto fine = run(100, 3.0);
  double worst = 0.0;
  std::size_t j = 0;
  for (const auto& s : coarse) {
    while (j + 1 < fine.size() && fine[j + 1].time < s.time) ++j;
    if (j + 1 >= fine.size()) break;
    const auto& a = fine[j];
    const auto& b = fine[j + 1];
    const double v = a.voltage + (s.time - a.time) / (b.time - a.time) * (b.voltage - a.voltage);
    worst = std::max(worst, std::abs(v - s.voltage));
  }
  CHECK(worst < 5e-3);
}

TEST_CASE("window solver reproduces the configured pristine balance") {
  auto p = testing::demo_parameters().cell;
  const double n0 = core::pristine_lithium_inventory(p);
  const auto w = core::solve_window(p, p.positive.nominal_capacity, p.negative.nominal_capacity, n0);
  CHECK(w.x100 == doctest::Approx(p.initial_x100).epsilon(1e-10));
  CHECK(core::open_circuit_voltage(p, w.x100, w.y100) == doctest::Approx(p.v_max).epsilon(1e-10));
  CHECK(core::open_circuit_voltage(p, w.x0, w.y0) == doctest::Approx(p.v_min).epsilon(1e-10));
  CHECK(w.capacity == doctest::Approx(p.positive.nominal_capacity * (w.y0 - w.y100)).epsilon(1e-9));
  CHECK(core::lithium_inventory(w.x0, p.negative.nominal_capacity, w.y0, p.positive.nominal_capacity) ==
        doctest::Approx(n0).epsilon(1e-12));
}
