#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deepsoh/degradation/parameters.hpp"
#include "deepsoh/errors.hpp"
#include "deepsoh/model.hpp"

namespace deepsoh::identify {

/// Measured quantities the degradation state is inverted from.
struct MeasurementVector {
  double capacity_pos = 0.0;  // Ah
  double capacity_neg = 0.0;  // Ah
  double lli = 0.0;
  double resistance = 0.0;    // ohm, cell level
  std::optional<double> expansion;  // m

  void validate() const;
};

/// Forward measurement model of a degradation state, expansion included.
MeasurementVector measure(const Model& model, const degradation::DeepSOH& soh);

/// Largest relative mismatch between two measurement vectors over the
/// components present in both.
double measurement_residual(const MeasurementVector& a, const MeasurementVector& b);

struct FilmPoint {
  double delta_sei = 0.0;  // m
  double delta_pl = 0.0;   // m
};

enum class ResultKind { unique, family, infeasible };

std::string to_string(ResultKind kind);

struct IdentificationResult {
  ResultKind kind = ResultKind::infeasible;
  std::optional<degradation::DeepSOH> solution;  // unique
  FilmPoint segment_start, segment_end;          // family, SEI-rich end first
  double film_resistance = 0.0;                  // ohm m^2 the films must supply
  double residual = 0.0;                         // forward-model check
  std::string diagnostic;

  /// State at fraction t in [0, 1] along the family segment.
  degradation::DeepSOH member(const MeasurementVector& y, double t) const;
};

struct InversionOptions {
  bool lli_budget = true;               // film lithium may not exceed LLI n_Li,0
  bool tie_break_by_lli_budget = false; // with expansion: drop roots that break the budget
  double tolerance = 1e-6;              // relative forward-model residual accepted
};

/// Two admissible roots of the expansion equation.
class AmbiguousRootsError : public Error {
 public:
  AmbiguousRootsError(const std::string& what, degradation::DeepSOH first, degradation::DeepSOH second)
      : Error(what), first_(first), second_(second) {}
  const degradation::DeepSOH& first() const { return first_; }
  const degradation::DeepSOH& second() const { return second_; }

 private:
  degradation::DeepSOH first_, second_;
};

/// Without expansion only the film resistance is known: every split of it
/// between SEI and plating on delta_SEI/kappa_SEI + delta_pl/kappa_pl = R
/// fits, so the answer is a segment.
IdentificationResult invert_without_expansion(const Model& model, const MeasurementVector& y,
                                              const InversionOptions& options = {});

/// With expansion the film split follows from a quadratic in delta_pl. Throws
/// AmbiguousRootsError when two admissible roots remain.
IdentificationResult invert_with_expansion(const Model& model, const MeasurementVector& y,
                                           const InversionOptions& options = {});

}  // namespace deepsoh::identify
