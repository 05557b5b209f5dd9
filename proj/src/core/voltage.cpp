#include "deepsoh/core/voltage.hpp"

#include "deepsoh/core/kinetics.hpp"

namespace deepsoh::core {

double open_circuit_voltage(const CellParameters& cell, double x, double y) {
  return cell.ocp(Electrode::positive, y) - cell.ocp(Electrode::negative, x);
}

double terminal_voltage(const CellParameters& cell, const ParticleState& state, double capacity_pos,
                        double capacity_neg, double current, double film_resistance) {
  const double css_p = state.positive.surface();
  const double css_n = state.negative.surface();
  const double eta_p = intercalation_overpotential(cell, Electrode::positive, current, css_p, capacity_pos);
  const double eta_n = intercalation_overpotential(cell, Electrode::negative, current, css_n, capacity_neg);
  return cell.ocp(Electrode::positive, css_p / cell.positive.max_concentration) + eta_p -
         cell.ocp(Electrode::negative, css_n / cell.negative.max_concentration) - eta_n - current * film_resistance;
}

}  // namespace deepsoh::core
