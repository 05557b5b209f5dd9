#include "deepsoh/degradation/cell.hpp"

#include <sstream>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/core/voltage.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::degradation {

using core::Electrode;
namespace c = deepsoh::constants;

namespace {

core::ParticleState equilibrated(const Model& model, double x, double y) {
  const auto& cell = model.cell();
  return {core::ParticleProfile(model.mesh(Electrode::positive), cell.positive.max_concentration,
                                y * cell.positive.max_concentration),
          core::ParticleProfile(model.mesh(Electrode::negative), cell.negative.max_concentration,
                                x * cell.negative.max_concentration)};
}

core::ParticleState place(const Model& model, const DeepSOH& soh, double soc) {
  if (!(soc >= 0.0 && soc <= 1.0)) throw DomainError("state of charge must lie in [0, 1]");
  const auto w = core::solve_window(model.cell(), soh.capacity_pos, soh.capacity_neg,
                                    model.initial_inventory() * (1.0 - soh.lli));
  const double x = w.x0 + soc * (w.x100 - w.x0);
  const double y = w.y0 + soc * (w.y100 - w.y0);
  return equilibrated(model, x, y);
}

}  // namespace

Cell::Cell(std::shared_ptr<const Model> model, const DeepSOH& soh, core::ParticleState particles, double lam_lithium)
    : model_(std::move(model)), soh_(soh), particles_(std::move(particles)), lam_lithium_(lam_lithium) {}

Cell Cell::pristine(std::shared_ptr<const Model> model, double soc) {
  const DeepSOH soh = model->pristine_state();
  auto particles = place(*model, soh, soc);
  return Cell(std::move(model), soh, std::move(particles), 0.0);
}

Cell Cell::at_state(std::shared_ptr<const Model> model, const DeepSOH& soh, double soc) {
  soh.validate();
  const double lam_lithium = model->initial_inventory() * soh.lli - model->film_lithium(soh);
  if (lam_lithium < -1e-12 * model->initial_inventory()) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "films hold " << model->film_lithium(soh) / model->initial_inventory()
        << " of the initial lithium, more than the state's LLI " << soh.lli;
    throw DomainError(msg.str());
  }
  auto particles = place(*model, soh, soc);
  return Cell(std::move(model), soh, std::move(particles), std::max(lam_lithium, 0.0));
}

Cell Cell::restore(std::shared_ptr<const Model> model, const DeepSOH& soh, core::ParticleState particles,
                   double lam_lithium, double time) {
  soh.validate();
  Cell cell(std::move(model), soh, std::move(particles), lam_lithium);
  cell.time_ = time;
  return cell;
}

double Cell::film_resistance() const { return model_->film_resistance(soh_); }

double Cell::terminal_voltage(double current) const {
  return core::terminal_voltage(model_->cell(), particles_, soh_.capacity_pos, soh_.capacity_neg, current,
                                film_resistance());
}

double Cell::open_circuit_voltage() const { return core::open_circuit_voltage(model_->cell(), x(), y()); }

double Cell::particle_lithium() const {
  return core::lithium_inventory(x(), soh_.capacity_neg, y(), soh_.capacity_pos);
}

double Cell::reconstructed_lli() const {
  const auto& d = model_->degradation();
  return lli_from_components(model_->books(), d.sei, d.plating, soh_, lam_lithium_);
}

core::StoichiometryWindow Cell::window() const {
  return core::solve_window(model_->cell(), soh_.capacity_pos, soh_.capacity_neg,
                            model_->initial_inventory() * (1.0 - soh_.lli));
}

core::ParticleState Cell::step_particles(double current, double side_rate, double dt) const {
  const auto& cell = model_->cell();
  const double molar_current = current / c::faraday;
  const double area_pos = cell.reactive_area(Electrode::positive, soh_.capacity_pos);
  const double area_neg = cell.reactive_area(Electrode::negative, soh_.capacity_neg);
  return {core::step_particle_diffusion(particles_.positive, cell.positive.diffusivity, -molar_current / area_pos, dt),
          core::step_particle_diffusion(particles_.negative, cell.negative.diffusivity,
                                        (molar_current + side_rate) / area_neg, dt)};
}

void Cell::advance(double current, double dt) {
  if (!(dt > 0)) throw DomainError("time step must be positive");
  auto next = step_particles(current, aging_ ? side_rate_ : 0.0, dt);
  DeepSOH soh = soh_;
  double side_rate = 0.0;
  if (aging_) {
    const auto step = step_deepsoh(model_->cell(), model_->degradation(), model_->books(), soh_, next, current, dt);
    soh = step.next;
    side_rate = (step.sei_lithium + step.plating_lithium) / dt;
    // re-draw the negative particle with the side-reaction lithium of this very step
    const auto& cell = model_->cell();
    next.negative = core::step_particle_diffusion(
        particles_.negative, cell.negative.diffusivity,
        (current / c::faraday + side_rate) / cell.reactive_area(Electrode::negative, soh_.capacity_neg), dt);
  }
  particles_ = std::move(next);
  soh_ = soh;
  side_rate_ = side_rate;
  time_ += dt;
  if (aging_) observe_stress();
}

double Cell::trial_voltage(double current, double dt) const {
  core::ParticleState next = step_particles(current, aging_ ? side_rate_ : 0.0, dt);
  return core::terminal_voltage(model_->cell(), next, soh_.capacity_pos, soh_.capacity_neg, current,
                                film_resistance());
}

void Cell::observe_stress() {
  const auto& lam = model_->degradation().lam;
  stress_pos_.observe(hydrostatic_stress(lam.stress_gain_pos, particles_.positive));
  stress_neg_.observe(hydrostatic_stress(lam.stress_gain_neg, particles_.negative));
}

void Cell::complete_cycle() {
  if (aging_) {
    const double x_now = x(), y_now = y();
    const DeepSOH next = lam_cycle_update(model_->cell(), model_->degradation().lam, soh_, stress_pos_, stress_neg_);
    DegradationRates change;
    change.capacity_pos = next.capacity_pos - soh_.capacity_pos;
    change.capacity_neg = next.capacity_neg - soh_.capacity_neg;
    const double lost = -c::seconds_per_hour / c::faraday * (y_now * change.capacity_pos + x_now * change.capacity_neg);
    DeepSOH updated = next;
    updated.lli = soh_.lli + lli_rate(model_->books(), change, x_now, y_now);
    if (!(updated.lli < 1.0)) throw CellDeadError("lithium inventory exhausted");
    soh_ = updated;
    lam_lithium_ += lost;
  }
  stress_pos_ = {};
  stress_neg_ = {};
}

}  // namespace deepsoh::degradation
