#include "deepsoh/core/window.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::core {

double lithium_inventory(double x, double capacity_neg, double y, double capacity_pos) {
  return constants::seconds_per_hour / constants::faraday * (x * capacity_neg + y * capacity_pos);
}

namespace {

double edge_stoichiometry(const CellParameters& cell, double cp, double cn, double q_li, double target,
                          const char* edge) {
  const auto& up = cell.positive.ocp;
  const auto& un = cell.negative.ocp;
  double lo = std::max(un.min_stoichiometry(), (q_li - cp * up.max_stoichiometry()) / cn);
  double hi = std::min(un.max_stoichiometry(), (q_li - cp * up.min_stoichiometry()) / cn);
  if (!(hi > lo)) {
    throw DomainError("electrode balance has no admissible stoichiometry pair");
  }
  auto voltage = [&](double x) {
    const double y = std::clamp((q_li - x * cn) / cp, up.min_stoichiometry(), up.max_stoichiometry());
    return up(y) - un(x);
  };
  const double v_lo = voltage(lo), v_hi = voltage(hi);
  if (!(v_lo <= target && target <= v_hi)) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "cannot reach " << edge << " = " << target << " V: open-circuit voltage spans only [" << v_lo << ", "
        << v_hi << "] V for this electrode balance";
    throw DomainError(msg.str());
  }
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (voltage(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

StoichiometryWindow solve_window(const CellParameters& cell, double cp, double cn, double n_li) {
  if (!(cp > 0 && cn > 0 && n_li > 0)) throw DomainError("electrode capacities and lithium inventory must be positive");
  const double q_li = n_li * constants::faraday / constants::seconds_per_hour;  // Ah
  StoichiometryWindow w;
  w.x100 = edge_stoichiometry(cell, cp, cn, q_li, cell.v_max, "V_max");
  w.x0 = edge_stoichiometry(cell, cp, cn, q_li, cell.v_min, "V_min");
  w.y100 = (q_li - w.x100 * cn) / cp;
  w.y0 = (q_li - w.x0 * cn) / cp;
  w.capacity = cn * (w.x100 - w.x0);
  return w;
}

double pristine_lithium_inventory(const CellParameters& cell) {
  const double u_neg = cell.negative.ocp(cell.initial_x100);
  const double y100 = cell.positive.ocp.inverse(cell.v_max + u_neg);
  return lithium_inventory(cell.initial_x100, cell.negative.nominal_capacity, y100, cell.positive.nominal_capacity);
}

double pristine_capacity(const CellParameters& cell) {
  return solve_window(cell, cell.positive.nominal_capacity, cell.negative.nominal_capacity,
                      pristine_lithium_inventory(cell))
      .capacity;
}

}  // namespace deepsoh::core
