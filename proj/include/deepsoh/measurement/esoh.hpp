#pragma once

#include <cstdint>
#include <vector>

#include "deepsoh/core/parameters.hpp"
#include "deepsoh/core/window.hpp"

namespace deepsoh::measurement {

/// One point of a low-rate voltage curve. Capacity is counted from the
/// discharged end of the window, so voltage rises with it.
struct CurvePoint {
  double capacity = 0.0;  // Ah
  double voltage = 0.0;   // V
};

using Curve = std::vector<CurvePoint>;

/// Electrode-specific state of health.
struct ESOHRecord {
  double capacity = 0.0;      // Ah, C_n (x100 - x0)
  double capacity_pos = 0.0;  // Ah
  double capacity_neg = 0.0;  // Ah
  double x0 = 0.0, x100 = 0.0;
  double y0 = 0.0, y100 = 0.0;
  double n_li = 0.0;          // mol
  double residual_rms = 0.0;  // V, curve-fit residual
};

/// Builds the record implied by (C_p, C_n, n_Li) through the window equations.
ESOHRecord esoh_from_balance(const core::CellParameters& cell, double capacity_pos, double capacity_neg,
                             double n_li);

/// U+(y0 - q/C_p) - U-(x0 + q/C_n) sampled at `points` capacities in [0, capacity].
Curve synthesize_ocv_curve(const core::CellParameters& cell, double capacity_pos, double capacity_neg, double x0,
                           double y0, double capacity, int points = 200);

/// Pseudo-OCV: mean of a charge and a discharge curve on a common capacity
/// grid. Both inputs are counted from the discharged end.
Curve average_curves(const Curve& charge, const Curve& discharge, int points = 200);

/// Linear interpolation of a curve at a capacity inside its span.
double curve_voltage_at(const Curve& curve, double capacity);

/// Largest voltage gap between two curves over their common capacity span.
double max_curve_gap(const Curve& a, const Curve& b, int points = 400);

/// Optional measurement noise: adds N(0, sigma) volts to every point.
Curve add_voltage_noise(const Curve& curve, double sigma, std::uint64_t seed);

struct ESOHFitOptions {
  int max_evaluations = 4000;
  double span_tolerance = 0.1;        // V, allowed miss of V_min / V_max at the curve ends
  double max_residual_rms = 0.02;     // V
};

/// Fits (C_p, C_n) and the stoichiometries at the first curve point to the
/// whole curve with a trust-region Levenberg-Marquardt solver, then places the
/// window with V_max = U+(y100) - U-(x100) and V_min = U+(y0) - U-(x0).
/// Throws DomainError when the curve does not span the window and
/// EstimationFailedError when no start converges. Starting points are the
/// nominal electrode capacities scaled by the measured capacity ratio.
ESOHRecord extract_esoh(const Curve& curve, const core::CellParameters& cell, const ESOHFitOptions& options = {});

}  // namespace deepsoh::measurement
