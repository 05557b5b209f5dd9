#pragma once

#include "deepsoh/degradation/parameters.hpp"

namespace deepsoh::measurement {

/// Scaling coefficients of the irreversible-expansion model.
struct ExpansionParameters {
  double b_sei = 0.0;     // dimensionless
  double b_pl = 0.0;      // 1/m, squares delta_pl into metres
  double b_in_pos = 0.0;  // m per unit LAM+
  double b_in_neg = 0.0;  // m per unit LAM-

  void validate() const;
};

struct NominalCapacities {
  double positive = 0.0;  // Ah
  double negative = 0.0;  // Ah
};

/// LAM+ = 1 - C_p / C_p,nom and LAM- = 1 - C_n / C_n,nom.
double lam_fraction(double capacity, double nominal);

/// The capacity-only part b_in+ LAM+ + b_in- LAM-.
double expansion_lam_term(const ExpansionParameters& p, const NominalCapacities& nominal, double capacity_pos,
                          double capacity_neg);

/// delta_irr = b_SEI delta_SEI + b_pl delta_pl^2 + b_in+ LAM+ + b_in- LAM-  (m)
double irreversible_expansion(const degradation::DeepSOH& soh, const NominalCapacities& nominal,
                              const ExpansionParameters& p);

}  // namespace deepsoh::measurement
