#pragma once

#include "deepsoh/core/parameters.hpp"

namespace deepsoh::core {

/// Stoichiometry limits of both electrodes at the voltage window edges.
struct StoichiometryWindow {
  double x0 = 0, x100 = 0;  // negative electrode at V_min / V_max
  double y0 = 0, y100 = 0;  // positive electrode at V_min / V_max
  double capacity = 0;      // Ah, C_n (x100 - x0)
};

/// Cyclable lithium n_Li = 3600/F (x C_n + y C_p), in mol.
double lithium_inventory(double x, double capacity_neg, double y, double capacity_pos);

/// Places the electrode balance defined by (C_p, C_n, n_Li) inside the
/// operating window: solves U+(y) - U-(x) = V for V_max and V_min along the
/// line x C_n + y C_p = n_Li F / 3600. Throws DomainError when either edge is
/// unreachable.
StoichiometryWindow solve_window(const CellParameters& cell, double capacity_pos, double capacity_neg,
                                 double n_li);

/// Lithium inventory of the pristine cell, fixed by initial_x100.
double pristine_lithium_inventory(const CellParameters& cell);

/// Capacity of the pristine cell across the voltage window (Ah).
double pristine_capacity(const CellParameters& cell);

}  // namespace deepsoh::core
