#pragma once

#include <memory>
#include <vector>

#include "deepsoh/identify/inversion.hpp"
#include "deepsoh/protocol/campaign.hpp"

namespace deepsoh::identify {

/// Clones a cell at the identified state (fully charged, equilibrated) and
/// cycles it to end of life.
protocol::Trajectory simulate_from_state(std::shared_ptr<const Model> model, const degradation::DeepSOH& state,
                                         const protocol::Campaign& campaign,
                                         const protocol::CampaignOptions& options = {});

/// Remaining useful life, in cycles, of a cell at the identified state.
int predict_rul(std::shared_ptr<const Model> model, const degradation::DeepSOH& state,
                const protocol::Campaign& campaign, const protocol::CampaignOptions& options = {});

struct AmbiguityConfig {
  int members = 3;
  double capacity_pos_fraction = 0.97;  // of nominal
  double capacity_neg_fraction = 0.95;
  double lli = 0.15;
  double sei_thickness = 400e-9;        // m, SEI-only end of the family
  bool lli_budget = true;
  int jobs = 1;

  void validate() const;
};

struct MemberResult {
  degradation::DeepSOH initial;
  MeasurementVector measured;           // forward model, with expansion
  protocol::Trajectory trajectory;      // cycle 0 carries the initial RPT
  IdentificationResult recovered;       // inversion of `measured` with expansion
};

struct AmbiguityReport {
  MeasurementVector target;             // shared measurement without expansion
  IdentificationResult family;
  std::vector<MemberResult> members;
  double max_curve_gap = 0.0;           // V, C/20 curves at cycle 0, across all pairs
  double resistance_spread = 0.0;       // (max - min) / mean of the pulse resistance at cycle 0
  double min_expansion_gap = 0.0;       // m, smallest pairwise difference at cycle 0
  double max_esoh_deviation = 0.0;      // relative, fitted eSOH across members
  double max_recovery_error = 0.0;      // relative, film thicknesses from inversion with expansion
  int max_rul = 0;
  double min_rul_gap_fraction = 0.0;    // smallest pairwise RUL gap over the largest RUL
};

/// Builds `members` states equally spaced along the family that matches the
/// configured eSOH and resistance, checks that they are indistinguishable by
/// RPT, and cycles each to end of life. Members run on up to `jobs` threads.
AmbiguityReport ambiguity_experiment(std::shared_ptr<const Model> model, const AmbiguityConfig& config,
                                     const protocol::Campaign& campaign,
                                     const protocol::CampaignOptions& options = {});

}  // namespace deepsoh::identify
