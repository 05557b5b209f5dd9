#pragma once

#include "deepsoh/core/parameters.hpp"
#include "deepsoh/core/particle.hpp"
#include "deepsoh/degradation/parameters.hpp"

namespace deepsoh::degradation {

// ---- SEI growth ----------------------------------------------------------

/// Combined kinetic / solvent-diffusion limited SEI flux (mol/m^2/s, <= 0):
///   j = -c_EC0 / (1 / (k exp(-alpha F eta / R T)) + delta / D)
double sei_flux(const SEIParameters& p, double temperature, double delta_sei, double eta_sei);

/// Closed-form d j_SEI / d delta_SEI.
double sei_flux_thickness_derivative(const SEIParameters& p, double temperature, double delta_sei, double eta_sei);

/// eta_SEI = eta- + U-(c_ss-) - U_SEI
double sei_overpotential(const SEIParameters& p, double eta_neg, double ocp_neg);

/// d delta_SEI / dt = -Omega_SEI j_SEI / 2  (>= 0)
double sei_growth_rate(const SEIParameters& p, double j_sei);

/// Lithium consumed by a layer of thickness delta: 2 A l- a_s- delta / Omega_SEI.
double sei_lithium_moles(const SEIParameters& p, double film_area, double delta_sei);

// ---- Lithium plating -----------------------------------------------------

/// j_pl = -k_pl c_e (c_ss- - c_avg-) / c_max- exp(-alpha_pl F eta_pl / R T),
/// with eta_pl = eta- + U-(c_ss-). Negative while the surface is enriched.
double plating_flux(const PlatingParameters& p, double temperature, double electrolyte_concentration,
                    double c_surface, double c_average, double c_max, double eta_pl);

/// d delta_pl / dt = Omega_pl |j_pl| while plating; stripping is not modelled,
/// so a positive flux contributes nothing.
double plating_growth_rate(const PlatingParameters& p, double j_pl);

/// Lithium held in a plated layer: A l- a_s- delta_pl / Omega_pl.
double plated_lithium_moles(const PlatingParameters& p, double film_area, double delta_pl);

// ---- Mechanical fatigue ----------------------------------------------------

/// sigma_h = gain * (c_avg - c_ss) / c_max. Positive (tensile surface) when the
/// surface is depleted.
double hydrostatic_stress(double stress_gain, const core::ParticleProfile& profile);

/// Running extrema of the hydrostatic stress over one cycle.
struct StressExtrema {
  double max = 0.0;
  double min = 0.0;

  void observe(double sigma) {
    if (sigma > max) max = sigma;
    if (sigma < min) min = sigma;
  }
};

/// Volume-fraction loss for one cycle:
///   -beta1 (|sigma_max| / sigma_crit)^m - beta2 (|sigma_min| / sigma_crit)^m
double lam_volume_fraction_change(double beta1, double beta2, double critical_stress, double exponent,
                                  const StressExtrema& extrema);

/// Applies one completed cycle of fatigue to C_p and C_n (C is proportional to
/// eps_s). Other components are returned unchanged. Throws CellDeadError if a
/// capacity would reach zero.
DeepSOH lam_cycle_update(const core::CellParameters& cell, const LAMParameters& lam, const DeepSOH& soh,
                         const StressExtrema& positive, const StressExtrema& negative);

// ---- Lithium inventory ----------------------------------------------------

struct DegradationRates {
  double delta_sei = 0.0;     // m/s
  double delta_pl = 0.0;      // m/s
  double capacity_pos = 0.0;  // Ah/s
  double capacity_neg = 0.0;  // Ah/s
};

/// Normalised LLI rate. Every lossy process (film growth, capacity loss at a
/// lithiated stoichiometry) raises LLI:
///   dLLI/dt = [A l- a_s- (2 ddelta_SEI/Omega_SEI + ddelta_pl/Omega_pl)
///              - 3600/F (y dC_p + x dC_n)] / n_Li,0
double lli_rate(const LithiumBookkeeping& books, const DegradationRates& rates, double x, double y);

/// LLI reconstructed from the film thicknesses and the accumulated LAM lithium.
double lli_from_components(const LithiumBookkeeping& books, const SEIParameters& sei,
                           const PlatingParameters& plating, const DeepSOH& soh, double lam_lithium);

// ---- Time step --------------------------------------------------------------

struct DegradationStep {
  DeepSOH next;
  double sei_lithium = 0.0;      // mol consumed during the step
  double plating_lithium = 0.0;  // mol consumed during the step
  double eta_sei = 0.0;
  double plating_flux = 0.0;
};

/// Backward-Euler advance of delta_SEI, delta_pl and LLI over dt, evaluated at
/// the end-of-step particle state. C_p and C_n are frozen within a cycle.
DegradationStep step_deepsoh(const core::CellParameters& cell, const DegradationParameters& params,
                             const LithiumBookkeeping& books, const DeepSOH& soh, const core::ParticleState& state,
                             double current, double dt);

}  // namespace deepsoh::degradation
