#include "deepsoh/measurement/esoh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "deepsoh/core/constants.hpp"
#include "deepsoh/errors.hpp"

namespace deepsoh::measurement {

using core::Electrode;

ESOHRecord esoh_from_balance(const core::CellParameters& cell, double capacity_pos, double capacity_neg,
                             double n_li) {
  const auto w = core::solve_window(cell, capacity_pos, capacity_neg, n_li);
  ESOHRecord r;
  r.capacity = w.capacity;
  r.capacity_pos = capacity_pos;
  r.capacity_neg = capacity_neg;
  r.x0 = w.x0;
  r.x100 = w.x100;
  r.y0 = w.y0;
  r.y100 = w.y100;
  r.n_li = n_li;
  return r;
}

Curve synthesize_ocv_curve(const core::CellParameters& cell, double capacity_pos, double capacity_neg, double x0,
                           double y0, double capacity, int points) {
  if (points < 2) throw DomainError("a curve needs at least two points");
  Curve out(points);
  for (int i = 0; i < points; ++i) {
    const double q = capacity * i / (points - 1);
    out[i] = {q, cell.ocp(Electrode::positive, y0 - q / capacity_pos) -
                     cell.ocp(Electrode::negative, x0 + q / capacity_neg)};
  }
  return out;
}

double curve_voltage_at(const Curve& curve, double q) {
  if (curve.size() < 2) throw DomainError("curve has fewer than two points");
  auto it = std::lower_bound(curve.begin(), curve.end(), q,
                             [](const CurvePoint& p, double v) { return p.capacity < v; });
  if (it == curve.begin()) return curve.front().voltage;
  if (it == curve.end()) return curve.back().voltage;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double span = hi.capacity - lo.capacity;
  if (span <= 0) return hi.voltage;
  return lo.voltage + (q - lo.capacity) / span * (hi.voltage - lo.voltage);
}

Curve average_curves(const Curve& charge, const Curve& discharge, int points) {
  if (charge.size() < 2 || discharge.size() < 2) throw DomainError("pseudo-OCV needs two non-trivial curves");
  const double span = std::min(charge.back().capacity, discharge.back().capacity);
  Curve out(points);
  for (int i = 0; i < points; ++i) {
    const double q = span * i / (points - 1);
    out[i] = {q, 0.5 * (curve_voltage_at(charge, q) + curve_voltage_at(discharge, q))};
  }
  return out;
}

double max_curve_gap(const Curve& a, const Curve& b, int points) {
  const double lo = std::max(a.front().capacity, b.front().capacity);
  const double hi = std::min(a.back().capacity, b.back().capacity);
  double gap = 0.0;
  for (int i = 0; i < points; ++i) {
    const double q = lo + (hi - lo) * i / (points - 1);
    gap = std::max(gap, std::abs(curve_voltage_at(a, q) - curve_voltage_at(b, q)));
  }
  return gap;
}

Curve add_voltage_noise(const Curve& curve, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  Curve out = curve;
  for (auto& p : out) p.voltage += noise(rng);
  return out;
}

namespace {

// OCP continued linearly past the table ends, so trial points of the solver
// outside [0, 1] still get a finite, smooth residual
struct ExtendedOcp {
  const core::OcpTable& table;

  double value(double s) const {
    const double lo = table.min_stoichiometry(), hi = table.max_stoichiometry();
    if (s < lo) return table(lo) + table.derivative(lo) * (s - lo);
    if (s > hi) return table(hi) + table.derivative(hi) * (s - hi);
    return table(s);
  }
  double slope(double s) const {
    return table.derivative(std::clamp(s, table.min_stoichiometry(), table.max_stoichiometry()));
  }
};

// unknowns: [C_p / C, C_n / C, x_a, y_a]
struct CurveFunctor : Eigen::DenseFunctor<double> {
  CurveFunctor(const Curve& c, const core::CellParameters& cell, double scale)
      : Eigen::DenseFunctor<double>(4, static_cast<int>(c.size())),
        curve(c),
        pos{cell.positive.ocp},
        neg{cell.negative.ocp},
        scale(scale) {}

  int operator()(const InputType& p, ValueType& r) const {
    const double cp = p[0] * scale, cn = p[1] * scale;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const double q = curve[i].capacity;
      r[i] = pos.value(p[3] - q / cp) - neg.value(p[2] + q / cn) - curve[i].voltage;
    }
    return 0;
  }

  int df(const InputType& p, JacobianType& j) const {
    const double cp = p[0] * scale, cn = p[1] * scale;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const double q = curve[i].capacity;
      const double dup = pos.slope(p[3] - q / cp);
      const double dun = neg.slope(p[2] + q / cn);
      j(i, 0) = dup * q / (cp * p[0]);
      j(i, 1) = dun * q / (cn * p[1]);
      j(i, 2) = -dun;
      j(i, 3) = dup;
    }
    return 0;
  }

  const Curve& curve;
  ExtendedOcp pos, neg;
  double scale;
};

double rms(const Eigen::VectorXd& r) { return std::sqrt(r.squaredNorm() / static_cast<double>(r.size())); }

}  // namespace

ESOHRecord extract_esoh(const Curve& curve, const core::CellParameters& cell, const ESOHFitOptions& options) {
  if (curve.size() < 8) throw DomainError("pseudo-OCV curve needs at least 8 points");
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].capacity > curve[i - 1].capacity)) {
      throw DomainError("pseudo-OCV curve capacities must be strictly increasing");
    }
  }
  const double v_lo = curve.front().voltage, v_hi = curve.back().voltage;
  if (v_lo > cell.v_min + options.span_tolerance || v_hi < cell.v_max - options.span_tolerance) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "curve spans [" << v_lo << ", " << v_hi << "] V, which does not cover the window [" << cell.v_min
        << ", " << cell.v_max << "] V";
    throw DomainError(msg.str());
  }

  const double measured = curve.back().capacity - curve.front().capacity;
  const auto nominal = core::solve_window(cell, cell.positive.nominal_capacity, cell.negative.nominal_capacity,
                                          core::pristine_lithium_inventory(cell));
  const double ratio = measured / nominal.capacity;

  Curve shifted = curve;
  for (auto& p : shifted) p.capacity -= curve.front().capacity;
  CurveFunctor functor(shifted, cell, measured);

  Eigen::VectorXd best;
  double best_rms = std::numeric_limits<double>::infinity();
  auto admissible = [&](const Eigen::VectorXd& p) {
    const double cp = p[0] * measured, cn = p[1] * measured;
    return p[0] > 0 && p[1] > 0 && p[2] >= 0 && p[3] <= 1 && p[2] + measured / cn <= 1 && p[3] - measured / cp >= 0;
  };
  for (double scale : {1.0, 0.9, 1.1, 0.8, 1.25}) {
    Eigen::VectorXd p(4);
    p << cell.positive.nominal_capacity * ratio * scale / measured,
        cell.negative.nominal_capacity * ratio * scale / measured, nominal.x0, nominal.y0;
    Eigen::LevenbergMarquardt<CurveFunctor> lm(functor);
    lm.setMaxfev(options.max_evaluations);
    lm.setXtol(1e-14);
    lm.setFtol(1e-14);
    lm.minimize(p);
    if (!p.allFinite() || !admissible(p)) continue;
    Eigen::VectorXd r(shifted.size());
    functor(p, r);
    const double fit = rms(r);
    if (fit < best_rms) {
      best_rms = fit;
      best = p;
    }
    if (best_rms < 1e-9) break;
  }
  if (best.size() == 0 || best_rms > options.max_residual_rms) {
    throw EstimationFailedError("eSOH fit did not converge to an admissible electrode balance (residual RMS " +
                                    std::to_string(best_rms) + " V)",
                                best_rms);
  }
  const double cp = best[0] * measured, cn = best[1] * measured;
  const double n_li = core::lithium_inventory(best[2], cn, best[3], cp);
  ESOHRecord out = esoh_from_balance(cell, cp, cn, n_li);
  out.residual_rms = best_rms;
  return out;
}

}  // namespace deepsoh::measurement
