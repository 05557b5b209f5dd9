#pragma once

#include "deepsoh/core/parameters.hpp"
#include "deepsoh/degradation/parameters.hpp"
#include "deepsoh/model.hpp"

namespace deepsoh::measurement {

/// R_film = delta_SEI / kappa_SEI + delta_pl / kappa_pl, in ohm m^2.
double film_resistance_area(const degradation::DeepSOH& soh, double kappa_sei, double kappa_pl);

/// Cell-level film resistance (ohm): the area-specific value spread over the
/// film-covered particle surface.
double film_resistance_cell(const degradation::DeepSOH& soh, double kappa_sei, double kappa_pl, double film_area);

/// Film-independent part of the instantaneous resistance (ohm), with c_ss
/// taken equal to the mean concentration at stoichiometries (x, y):
///   R T / ((1 - alpha) F) * sum over electrodes of gamma / sqrt((I gamma)^2 + 1)
/// Throws KineticsSingularError at a stoichiometry of 0 or 1.
double kinetic_resistance(const core::CellParameters& cell, double capacity_pos, double capacity_neg, double x,
                          double y, double current);

struct Stoichiometry {
  double x = 0.0;  // negative electrode
  double y = 0.0;  // positive electrode
};

/// R_s = R_film (cell level) + kinetic_resistance.
double instantaneous_resistance(const core::CellParameters& cell, const degradation::DeepSOH& soh,
                                Stoichiometry at, double current, double kappa_sei, double kappa_pl,
                                double film_area);

/// Film-independent resistance h4(C_p, C_n) of a degradation state: the
/// kinetic term at the mid-window stoichiometries, probed with the model's
/// pulse current.
double mid_window_kinetic_resistance(const Model& model, double capacity_pos, double capacity_neg, double lli);

/// R_s = R_film + h4 for a full degradation state.
double state_resistance(const Model& model, const degradation::DeepSOH& soh);

}  // namespace deepsoh::measurement
