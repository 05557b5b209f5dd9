#pragma once

#include "deepsoh/core/parameters.hpp"
#include "deepsoh/core/particle.hpp"

namespace deepsoh::core {

/// U+(y) - U-(x) at the given stoichiometries.
double open_circuit_voltage(const CellParameters& cell, double x, double y);

/// V_T = U+(c_ss+) + eta+ - U-(c_ss-) - eta- - I R_film, discharge positive.
/// Both overpotentials are anodic-positive, so both dissipate under load.
/// `film_resistance` is the cell-level film resistance in ohm.
double terminal_voltage(const CellParameters& cell, const ParticleState& state, double capacity_pos,
                        double capacity_neg, double current, double film_resistance);

}  // namespace deepsoh::core
