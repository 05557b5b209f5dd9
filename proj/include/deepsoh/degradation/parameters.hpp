#pragma once

namespace deepsoh::degradation {

/// Degradation state: film thicknesses, electrode capacities and the
/// normalised loss of lithium inventory.
struct DeepSOH {
  double delta_sei = 0.0;     // m
  double delta_pl = 0.0;      // m
  double capacity_pos = 0.0;  // Ah
  double capacity_neg = 0.0;  // Ah
  double lli = 0.0;           // fraction of the pristine inventory

  /// Throws DomainError when a component is outside its admissible range.
  void validate() const;
};

struct SEIParameters {
  double rate_constant = 0.0;         // m/s, kinetic rate constant (0 disables growth)
  double alpha = 0.5;
  double potential = 0.4;             // V, equilibrium potential of the side reaction
  double solvent_concentration = 0.0; // mol/m^3, bulk EC
  double diffusivity = 0.0;           // m^2/s, solvent diffusivity through the layer
  double molar_volume = 0.0;          // m^3/mol
  double conductivity = 0.0;          // S/m
};

struct PlatingParameters {
  double rate_constant = 0.0;  // m/s (0 disables plating)
  double alpha = 0.5;
  double molar_volume = 0.0;   // m^3/mol
  double conductivity = 0.0;   // S/m
};

/// Per-cycle fatigue loss of active material. The stress closure is
/// sigma_h = gain * (c_avg - c_ss) / c_max for each electrode.
struct LAMParameters {
  double beta1_pos = 0.0, beta2_pos = 0.0;
  double beta1_neg = 0.0, beta2_neg = 0.0;
  double critical_stress_pos = 1.0, critical_stress_neg = 1.0;  // Pa
  double exponent = 2.0;
  double stress_gain_pos = 0.0, stress_gain_neg = 0.0;          // Pa
};

struct DegradationParameters {
  SEIParameters sei;
  PlatingParameters plating;
  LAMParameters lam;

  void validate() const;
};

/// Constants that convert film thicknesses and capacity changes into moles of
/// lithium. Side reactions act on the pristine negative particle surface.
struct LithiumBookkeeping {
  double film_area = 0.0;             // m^2, a_s- A l- of the pristine electrode
  double sei_molar_volume = 0.0;
  double plating_molar_volume = 0.0;
  double initial_inventory = 0.0;     // mol, n_Li,0
};

}  // namespace deepsoh::degradation
