#include "deepsoh/measurement/resistance.hpp"

#include <cmath>

#include "deepsoh/core/kinetics.hpp"
#include "deepsoh/core/window.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::measurement {

using core::Electrode;

double film_resistance_area(const degradation::DeepSOH& soh, double kappa_sei, double kappa_pl) {
  if (!(kappa_sei > 0 && kappa_pl > 0)) throw DomainError("film conductivities must be positive");
  return soh.delta_sei / kappa_sei + soh.delta_pl / kappa_pl;
}

double film_resistance_cell(const degradation::DeepSOH& soh, double kappa_sei, double kappa_pl, double film_area) {
  return film_resistance_area(soh, kappa_sei, kappa_pl) / film_area;
}

double kinetic_resistance(const core::CellParameters& cell, double capacity_pos, double capacity_neg, double x,
                          double y, double current) {
  auto term = [&](Electrode e, double stoich, double capacity) {
    if (!(stoich > 0.0 && stoich < 1.0)) {
      throw KineticsSingularError(std::string(core::to_string(e)) +
                                  " stoichiometry at 0 or 1 makes the exchange current vanish");
    }
    const double gamma = core::kinetic_gamma(cell, e, stoich * cell.electrode(e).max_concentration, capacity);
    return gamma / std::sqrt((current * gamma) * (current * gamma) + 1.0);
  };
  return cell.thermal_voltage() / (1.0 - cell.alpha) *
         (term(Electrode::positive, y, capacity_pos) + term(Electrode::negative, x, capacity_neg));
}

double instantaneous_resistance(const core::CellParameters& cell, const degradation::DeepSOH& soh, Stoichiometry at,
                                double current, double kappa_sei, double kappa_pl, double film_area) {
  return film_resistance_cell(soh, kappa_sei, kappa_pl, film_area) +
         kinetic_resistance(cell, soh.capacity_pos, soh.capacity_neg, at.x, at.y, current);
}

double mid_window_kinetic_resistance(const Model& model, double capacity_pos, double capacity_neg, double lli) {
  const auto w =
      core::solve_window(model.cell(), capacity_pos, capacity_neg, model.initial_inventory() * (1.0 - lli));
  return kinetic_resistance(model.cell(), capacity_pos, capacity_neg, 0.5 * (w.x0 + w.x100), 0.5 * (w.y0 + w.y100),
                            model.probe_current());
}

double state_resistance(const Model& model, const degradation::DeepSOH& soh) {
  return model.film_resistance(soh) +
         mid_window_kinetic_resistance(model, soh.capacity_pos, soh.capacity_neg, soh.lli);
}

}  // namespace deepsoh::measurement
