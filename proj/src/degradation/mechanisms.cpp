#include "deepsoh/degradation/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/core/kinetics.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::degradation {

using core::Electrode;
namespace c = deepsoh::constants;

namespace {

double kinetic_rate(const SEIParameters& p, double temperature, double eta_sei) {
  return p.rate_constant * std::exp(-p.alpha * c::faraday * eta_sei / (c::gas_constant * temperature));
}

}  // namespace

double sei_flux(const SEIParameters& p, double temperature, double delta_sei, double eta_sei) {
  const double k = kinetic_rate(p, temperature, eta_sei);
  if (k <= 0.0) return 0.0;
  return -p.solvent_concentration / (1.0 / k + delta_sei / p.diffusivity);
}

double sei_flux_thickness_derivative(const SEIParameters& p, double temperature, double delta_sei,
                                     double eta_sei) {
  const double k = kinetic_rate(p, temperature, eta_sei);
  if (k <= 0.0) return 0.0;
  const double resistance = 1.0 / k + delta_sei / p.diffusivity;
  return p.solvent_concentration / (p.diffusivity * resistance * resistance);
}

double sei_overpotential(const SEIParameters& p, double eta_neg, double ocp_neg) {
  return eta_neg + ocp_neg - p.potential;
}

double sei_growth_rate(const SEIParameters& p, double j_sei) { return -p.molar_volume * j_sei / 2.0; }

double sei_lithium_moles(const SEIParameters& p, double film_area, double delta_sei) {
  return 2.0 * film_area * delta_sei / p.molar_volume;
}

double plating_flux(const PlatingParameters& p, double temperature, double c_e, double c_surface, double c_average,
                    double c_max, double eta_pl) {
  if (p.rate_constant == 0.0) return 0.0;
  return -p.rate_constant * c_e * (c_surface - c_average) / c_max *
         std::exp(-p.alpha * c::faraday * eta_pl / (c::gas_constant * temperature));
}

double plating_growth_rate(const PlatingParameters& p, double j_pl) {
  return p.molar_volume * std::max(-j_pl, 0.0);
}

double plated_lithium_moles(const PlatingParameters& p, double film_area, double delta_pl) {
  return film_area * delta_pl / p.molar_volume;
}

double hydrostatic_stress(double stress_gain, const core::ParticleProfile& profile) {
  return stress_gain * (profile.average() - profile.surface()) / profile.max_concentration();
}

double lam_volume_fraction_change(double beta1, double beta2, double critical_stress, double exponent,
                                  const StressExtrema& s) {
  double loss = 0.0;
  if (beta1 > 0.0) loss += beta1 * std::pow(std::abs(s.max) / critical_stress, exponent);
  if (beta2 > 0.0) loss += beta2 * std::pow(std::abs(s.min) / critical_stress, exponent);
  return -loss;
}

DeepSOH lam_cycle_update(const core::CellParameters& cell, const LAMParameters& lam, const DeepSOH& soh,
                         const StressExtrema& positive, const StressExtrema& negative) {
  auto capacity_change = [&](Electrode e, double eps_change) {
    const auto& p = cell.electrode(e);
    return eps_change * cell.area * c::faraday * p.thickness * p.max_concentration / c::seconds_per_hour;
  };
  DeepSOH next = soh;
  next.capacity_pos += capacity_change(
      Electrode::positive,
      lam_volume_fraction_change(lam.beta1_pos, lam.beta2_pos, lam.critical_stress_pos, lam.exponent, positive));
  next.capacity_neg += capacity_change(
      Electrode::negative,
      lam_volume_fraction_change(lam.beta1_neg, lam.beta2_neg, lam.critical_stress_neg, lam.exponent, negative));
  if (!(next.capacity_pos > 0.0) || !(next.capacity_neg > 0.0)) {
    throw CellDeadError("loss of active material exhausted an electrode");
  }
  return next;
}

double lli_rate(const LithiumBookkeeping& b, const DegradationRates& r, double x, double y) {
  const double side = b.film_area * (2.0 * r.delta_sei / b.sei_molar_volume + r.delta_pl / b.plating_molar_volume);
  const double lam = c::seconds_per_hour / c::faraday * (y * r.capacity_pos + x * r.capacity_neg);
  return (side - lam) / b.initial_inventory;
}

double lli_from_components(const LithiumBookkeeping& b, const SEIParameters& sei, const PlatingParameters& plating,
                           const DeepSOH& soh, double lam_lithium) {
  return (sei_lithium_moles(sei, b.film_area, soh.delta_sei) +
          plated_lithium_moles(plating, b.film_area, soh.delta_pl) + lam_lithium) /
         b.initial_inventory;
}

DegradationStep step_deepsoh(const core::CellParameters& cell, const DegradationParameters& params,
                             const LithiumBookkeeping& books, const DeepSOH& soh, const core::ParticleState& state,
                             double current, double dt) {
  if (!(dt > 0)) throw DomainError("degradation step needs dt > 0");
  const auto& neg = state.negative;
  const double css = neg.surface();
  const double eta_neg =
      core::intercalation_overpotential(cell, Electrode::negative, current, css, soh.capacity_neg);
  const double u_neg = cell.ocp(Electrode::negative, css / cell.negative.max_concentration);

  DegradationStep out;
  out.next = soh;

  // SEI: (delta' - delta)(1/k + delta'/D) = dt Omega c_EC0 / 2, solved for the positive root
  const auto& sei = params.sei;
  out.eta_sei = sei_overpotential(sei, eta_neg, u_neg);
  const double k = sei.rate_constant *
                   std::exp(-sei.alpha * c::faraday * out.eta_sei / (c::gas_constant * cell.temperature));
  if (k > 0.0) {
    const double d = sei.diffusivity;
    const double p = d / k - soh.delta_sei;
    const double q = d * soh.delta_sei / k + d * dt * sei.molar_volume * sei.solvent_concentration / 2.0;
    const double root = std::sqrt(p * p + 4.0 * q);
    out.next.delta_sei = p > 0.0 ? 2.0 * q / (p + root) : 0.5 * (root - p);
  }

  // plating: the flux does not depend on delta_pl, so the implicit update is explicit in form
  const auto& pl = params.plating;
  out.plating_flux = plating_flux(pl, cell.temperature, cell.electrolyte_concentration, css, neg.average(),
                                  cell.negative.max_concentration, eta_neg + u_neg);
  out.next.delta_pl = soh.delta_pl + dt * plating_growth_rate(pl, out.plating_flux);

  DegradationRates rates;
  rates.delta_sei = (out.next.delta_sei - soh.delta_sei) / dt;
  rates.delta_pl = (out.next.delta_pl - soh.delta_pl) / dt;
  out.next.lli = soh.lli + dt * lli_rate(books, rates, 0.0, 0.0);
  out.sei_lithium = sei_lithium_moles(sei, books.film_area, out.next.delta_sei - soh.delta_sei);
  out.plating_lithium = plated_lithium_moles(pl, books.film_area, out.next.delta_pl - soh.delta_pl);
  if (!(out.next.lli < 1.0)) throw CellDeadError("lithium inventory exhausted");
  return out;
}

}  // namespace deepsoh::degradation
