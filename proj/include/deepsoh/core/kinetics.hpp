#pragma once

#include "deepsoh/core/parameters.hpp"

namespace deepsoh::core {

/// i0 = k0 c_e^(1-alpha) (c_max - c_ss)^(1-alpha) c_ss^alpha, in A/m^2.
double exchange_current_density(const CellParameters& cell, Electrode e, double surface_concentration);

/// Intercalation overpotential from the inverted symmetric Butler-Volmer law,
///   eta = R T / ((1 - alpha) F) * asinh(i / (2 i0)),
/// where i is the anodic (delithiation) current density on the particle
/// surface. With discharge current positive, eta > 0 on the negative electrode
/// and eta < 0 on the positive one.
double intercalation_overpotential(const CellParameters& cell, Electrode e, double current,
                                   double surface_concentration, double capacity_ah);

/// gamma = 1 / (2 i0 a_s A l): the linearisation factor of the overpotential,
/// so that eta = R T / ((1 - alpha) F) * asinh(gamma * I).
double kinetic_gamma(const CellParameters& cell, Electrode e, double surface_concentration, double capacity_ah);

}  // namespace deepsoh::core
