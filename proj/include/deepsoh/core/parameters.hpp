#pragma once

#include "deepsoh/core/ocp.hpp"

namespace deepsoh::core {

/// Geometry, transport and kinetics of one electrode. All SI except the
/// nominal capacity, which is in Ah.
struct ElectrodeParameters {
  double thickness = 0.0;          // m
  double particle_radius = 0.0;    // m
  double max_concentration = 0.0;  // mol/m^3
  double diffusivity = 0.0;        // m^2/s
  double rate_constant = 0.0;      // k0, gives i0 in A/m^2
  double nominal_capacity = 0.0;   // Ah
  OcpTable ocp;
};

/// Single-particle cell description. Discharge current is positive throughout.
struct CellParameters {
  double area = 0.0;                        // m^2
  double alpha = 0.5;                       // charge-transfer symmetry factor
  double electrolyte_concentration = 0.0;   // mol/m^3
  double temperature = 298.15;              // K
  double v_max = 4.2;                       // V
  double v_min = 3.0;                       // V
  double initial_x100 = 0.85;               // negative stoichiometry at V_max when pristine
  int radial_shells = 20;
  ElectrodeParameters positive;
  ElectrodeParameters negative;

  const ElectrodeParameters& electrode(Electrode e) const {
    return e == Electrode::positive ? positive : negative;
  }

  /// Throws DomainError naming the first violated invariant.
  void validate() const;

  double thermal_voltage() const;

  /// eps_s = 3600 C / (A F l c_max)
  double volume_fraction(Electrode e, double capacity_ah) const;
  /// a_s = 3 eps_s / r_p
  double specific_area(Electrode e, double capacity_ah) const;
  /// Total particle surface in the electrode, a_s A l (m^2).
  double reactive_area(Electrode e, double capacity_ah) const;

  /// Open-circuit potential; DomainError names the electrode when out of range.
  double ocp(Electrode e, double stoichiometry) const;
};

}  // namespace deepsoh::core
