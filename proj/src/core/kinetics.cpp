#include "deepsoh/core/kinetics.hpp"

#include <cmath>
#include <sstream>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::core {

double exchange_current_density(const CellParameters& cell, Electrode e, double c_ss) {
  const auto& p = cell.electrode(e);
  if (!(c_ss >= 0.0 && c_ss <= p.max_concentration)) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << to_string(e) << " surface concentration " << c_ss << " outside [0, " << p.max_concentration << "]";
    throw DomainError(msg.str());
  }
  const double a = cell.alpha;
  return p.rate_constant * std::pow(cell.electrolyte_concentration, 1.0 - a) *
         std::pow(p.max_concentration - c_ss, 1.0 - a) * std::pow(c_ss, a);
}

double kinetic_gamma(const CellParameters& cell, Electrode e, double c_ss, double capacity_ah) {
  const double i0 = exchange_current_density(cell, e, c_ss);
  if (i0 <= 0.0) {
    throw KineticsSingularError(std::string(to_string(e)) + " exchange current density vanishes");
  }
  return 1.0 / (2.0 * i0 * cell.reactive_area(e, capacity_ah));
}

double intercalation_overpotential(const CellParameters& cell, Electrode e, double current, double c_ss,
                                   double capacity_ah) {
  const double i0 = exchange_current_density(cell, e, c_ss);
  if (current == 0.0) return 0.0;
  if (i0 <= 0.0) {
    throw KineticsSingularError(std::string(to_string(e)) +
                                " exchange current density vanishes under nonzero current");
  }
  const double anodic = e == Electrode::negative ? current : -current;
  const double i = anodic / cell.reactive_area(e, capacity_ah);
  return cell.thermal_voltage() / (1.0 - cell.alpha) * std::asinh(i / (2.0 * i0));
}

}  // namespace deepsoh::core
