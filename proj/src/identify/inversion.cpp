#include "deepsoh/identify/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deepsoh/degradation/mechanisms.hpp"
#include "deepsoh/measurement/resistance.hpp"

namespace deepsoh::identify {

using degradation::DeepSOH;

void MeasurementVector::validate() const {
  if (!(capacity_pos > 0 && capacity_neg > 0)) throw DomainError("measured electrode capacities must be positive");
  if (!(lli >= 0 && lli < 1)) throw DomainError("measured LLI must lie in [0, 1)");
  if (!(resistance > 0)) throw DomainError("measured resistance must be positive");
  if (expansion && !(*expansion >= 0)) throw DomainError("measured expansion must be non-negative");
}

MeasurementVector measure(const Model& model, const DeepSOH& soh) {
  MeasurementVector y;
  y.capacity_pos = soh.capacity_pos;
  y.capacity_neg = soh.capacity_neg;
  y.lli = soh.lli;
  y.resistance = measurement::state_resistance(model, soh);
  y.expansion = model.expansion_of(soh);
  return y;
}

double measurement_residual(const MeasurementVector& a, const MeasurementVector& b) {
  auto rel = [](double u, double v, double floor) { return std::abs(u - v) / std::max(std::abs(v), floor); };
  double r = std::max({rel(a.capacity_pos, b.capacity_pos, 1e-9), rel(a.capacity_neg, b.capacity_neg, 1e-9),
                       rel(a.lli, b.lli, 1e-9), rel(a.resistance, b.resistance, 1e-12)});
  if (a.expansion && b.expansion) r = std::max(r, rel(*a.expansion, *b.expansion, 1e-15));
  return r;
}

std::string to_string(ResultKind kind) {
  switch (kind) {
    case ResultKind::unique: return "unique";
    case ResultKind::family: return "family";
    case ResultKind::infeasible: return "infeasible";
  }
  return "?";
}

DeepSOH IdentificationResult::member(const MeasurementVector& y, double t) const {
  if (!(t >= 0 && t <= 1)) throw DomainError("family parameter must lie in [0, 1]");
  DeepSOH s;
  s.delta_sei = segment_start.delta_sei + t * (segment_end.delta_sei - segment_start.delta_sei);
  s.delta_pl = segment_start.delta_pl + t * (segment_end.delta_pl - segment_start.delta_pl);
  s.capacity_pos = y.capacity_pos;
  s.capacity_neg = y.capacity_neg;
  s.lli = y.lli;
  return s;
}

namespace {

IdentificationResult infeasible(std::string why, double film_resistance = 0.0) {
  IdentificationResult r;
  r.kind = ResultKind::infeasible;
  r.diagnostic = std::move(why);
  r.film_resistance = film_resistance;
  return r;
}

std::string format(const char* label, double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << label << v;
  return os.str();
}

DeepSOH with_films(const MeasurementVector& y, double delta_sei, double delta_pl) {
  return {delta_sei, delta_pl, y.capacity_pos, y.capacity_neg, y.lli};
}

}  // namespace

IdentificationResult invert_without_expansion(const Model& model, const MeasurementVector& y,
                                              const InversionOptions& options) {
  y.validate();
  const auto& sei = model.degradation().sei;
  const auto& pl = model.degradation().plating;
  double h4 = 0.0;
  try {
    h4 = measurement::mid_window_kinetic_resistance(model, y.capacity_pos, y.capacity_neg, y.lli);
  } catch (const Error& e) {
    return infeasible(std::string("electrode balance cannot be placed in the voltage window: ") + e.what());
  }
  double r_cell = y.resistance - h4;
  if (r_cell < -1e-9 * y.resistance) {
    return infeasible(format("resistance is below the film-free kinetic term h4 = ", h4) + " ohm");
  }
  r_cell = std::max(r_cell, 0.0);
  const double r_area = r_cell * model.film_area();

  IdentificationResult out;
  out.kind = ResultKind::family;
  out.film_resistance = r_area;
  const FilmPoint sei_end{sei.conductivity * r_area, 0.0};
  const FilmPoint plating_end{0.0, pl.conductivity * r_area};
  auto at = [&](double t) {
    return FilmPoint{sei_end.delta_sei * (1 - t), plating_end.delta_pl * t};
  };
  double t_lo = 0.0, t_hi = 1.0;
  if (options.lli_budget) {
    const double budget = y.lli * model.initial_inventory();
    auto lithium = [&](const FilmPoint& p) { return model.film_lithium(with_films(y, p.delta_sei, p.delta_pl)); };
    const double g0 = lithium(sei_end), g1 = lithium(plating_end);
    const double slack = 1e-12 * model.initial_inventory();
    if (g0 > budget + slack && g1 > budget + slack) {
      return infeasible(format("films on the iso-resistance line need more lithium than the measured LLI ", y.lli),
                        r_area);
    }
    if (g0 > budget + slack) t_lo = std::clamp((budget - g0) / (g1 - g0), 0.0, 1.0);
    if (g1 > budget + slack) t_hi = std::clamp((budget - g0) / (g1 - g0), 0.0, 1.0);
  }
  out.segment_start = at(t_lo);
  out.segment_end = at(t_hi);

  for (const auto& p : {out.segment_start, out.segment_end}) {
    MeasurementVector back = measure(model, with_films(y, p.delta_sei, p.delta_pl));
    back.expansion.reset();
    out.residual = std::max(out.residual, measurement_residual(back, y));
  }
  if (out.residual > options.tolerance) {
    return infeasible(format("family endpoints fail the forward check, residual ", out.residual), r_area);
  }
  return out;
}

IdentificationResult invert_with_expansion(const Model& model, const MeasurementVector& y,
                                           const InversionOptions& options) {
  if (!y.expansion) throw DomainError("inversion with expansion needs an expansion measurement");
  InversionOptions family_options = options;
  family_options.lli_budget = false;
  IdentificationResult family = invert_without_expansion(model, y, family_options);
  if (family.kind == ResultKind::infeasible) return family;

  const auto& sei = model.degradation().sei;
  const auto& pl = model.degradation().plating;
  const auto& ex = model.expansion();
  const double r_area = family.film_resistance;
  const double p_max = pl.conductivity * r_area;
  const double target =
      *y.expansion - measurement::expansion_lam_term(ex, model.nominal_electrodes(), y.capacity_pos, y.capacity_neg);

  // b_pl p^2 - s p + (b_SEI kappa_SEI R - E) = 0 with delta_SEI = kappa_SEI (R - p / kappa_pl)
  const double a = ex.b_pl;
  const double s = ex.b_sei * sei.conductivity / pl.conductivity;
  const double c = ex.b_sei * sei.conductivity * r_area - target;

  std::vector<double> roots;
  if (a == 0.0 && s == 0.0) {
    if (std::abs(target) > 1e-9 * std::max(std::abs(*y.expansion), 1e-15)) {
      return infeasible(format("expansion carries no film information yet leaves a residual of ", target), r_area);
    }
    family.diagnostic = "expansion coefficients of both films are zero; the film split stays undetermined";
    return family;
  } else if (a == 0.0) {
    roots.push_back(c / s);
  } else {
    double disc = s * s - 4.0 * a * c;
    if (disc < 0.0) {
      if (disc < -1e-12 * s * s) {
        return infeasible(format("expansion equation has no real root; plating term would need ", -disc / (4 * a)),
                          r_area);
      }
      disc = 0.0;
    }
    const double q = 0.5 * (s + std::sqrt(disc));
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c / q);
  }

  const double slack = 1e-9 * std::max(p_max, 1e-12);
  std::vector<double> admissible;
  for (double p : roots) {
    if (!(p >= -slack && p <= p_max + slack)) continue;
    p = std::clamp(p, 0.0, p_max);
    if (std::none_of(admissible.begin(), admissible.end(),
                     [&](double other) { return std::abs(other - p) <= slack; })) {
      admissible.push_back(p);
    }
  }
  auto state_of = [&](double p) {
    return with_films(y, std::max(sei.conductivity * (r_area - p / pl.conductivity), 0.0), p);
  };
  const double budget = y.lli * model.initial_inventory() * (1.0 + 1e-9);
  if (options.tie_break_by_lli_budget && admissible.size() > 1) {
    std::erase_if(admissible, [&](double p) { return model.film_lithium(state_of(p)) > budget; });
  }
  if (admissible.empty()) {
    std::ostringstream why;
    why.imbue(std::locale::classic());
    why << "no non-negative film split reproduces the expansion; film part of the expansion is " << target
        << " m, admissible range for this resistance is [" << ex.b_sei * sei.conductivity * r_area << ", "
        << ex.b_pl * p_max * p_max << "] m";
    return infeasible(why.str(), r_area);
  }
  if (admissible.size() > 1) {
    throw AmbiguousRootsError("expansion equation has two admissible roots", state_of(admissible[0]),
                              state_of(admissible[1]));
  }

  IdentificationResult out;
  out.kind = ResultKind::unique;
  out.film_resistance = r_area;
  out.solution = state_of(admissible.front());
  out.segment_start = out.segment_end = {out.solution->delta_sei, out.solution->delta_pl};
  out.residual = measurement_residual(measure(model, *out.solution), y);
  if (out.residual > options.tolerance) {
    return infeasible(format("root fails the forward check, residual ", out.residual), r_area);
  }
  if (options.lli_budget && model.film_lithium(*out.solution) > budget) {
    return infeasible(format("identified films hold more lithium than the measured LLI ", y.lli), r_area);
  }
  return out;
}

}  // namespace deepsoh::identify
