#include "deepsoh/core/parameters.hpp"

#include <cmath>
#include <string>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::core {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void validate_electrode(const ElectrodeParameters& p, Electrode e) {
  const std::string name(to_string(e));
  require(p.thickness > 0, name + " electrode thickness must be positive");
  require(p.particle_radius > 0, name + " particle radius must be positive");
  require(p.max_concentration > 0, name + " max concentration must be positive");
  require(p.diffusivity > 0, name + " diffusivity must be positive");
  require(p.rate_constant > 0, name + " rate constant must be positive");
  require(p.nominal_capacity > 0, name + " nominal capacity must be positive");
  require(!p.ocp.empty(), name + " OCP table missing");
}

}  // namespace

void CellParameters::validate() const {
  require(area > 0, "cell area must be positive");
  require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
  require(electrolyte_concentration > 0, "electrolyte concentration must be positive");
  require(temperature > 0, "temperature must be positive");
  require(v_min < v_max, "v_min must be below v_max");
  require(initial_x100 > 0 && initial_x100 < 1, "initial x100 must lie in (0, 1)");
  require(radial_shells >= 2, "radial_shells must be at least 2");
  validate_electrode(positive, Electrode::positive);
  validate_electrode(negative, Electrode::negative);
  for (Electrode e : {Electrode::positive, Electrode::negative}) {
    const double eps = volume_fraction(e, electrode(e).nominal_capacity);
    require(eps > 0 && eps < 1, std::string(to_string(e)) + " active volume fraction " + std::to_string(eps) +
                                    " implied by the nominal capacity is outside (0, 1)");
  }
}

double CellParameters::thermal_voltage() const {
  return constants::gas_constant * temperature / constants::faraday;
}

double CellParameters::volume_fraction(Electrode e, double capacity_ah) const {
  const auto& p = electrode(e);
  return constants::seconds_per_hour * capacity_ah / (area * constants::faraday * p.thickness * p.max_concentration);
}

double CellParameters::specific_area(Electrode e, double capacity_ah) const {
  return 3.0 * volume_fraction(e, capacity_ah) / electrode(e).particle_radius;
}

double CellParameters::reactive_area(Electrode e, double capacity_ah) const {
  return specific_area(e, capacity_ah) * area * electrode(e).thickness;
}

double CellParameters::ocp(Electrode e, double stoichiometry) const {
  return electrode(e).ocp(stoichiometry);
}

}  // namespace deepsoh::core
