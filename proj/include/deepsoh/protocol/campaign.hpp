#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deepsoh/protocol/engine.hpp"

namespace deepsoh::protocol {

struct Campaign {
  std::vector<ProtocolStep> cycle;
  int rpt_every = 50;
  double eol_capacity_fraction = 0.7;  // of the pristine window capacity
  int max_cycles = 500;

  /// Throws InputError. A fraction of exactly 1 is accepted and ends life at
  /// the first cycle.
  void validate() const;
};

/// The second-life cycle: discharge at C/5 to V_min, rest 10 s, charge at C/5
/// to V_max with a hold until C/100, rest 18 h.
Campaign second_life_campaign(const core::CellParameters& cell);

struct CycleRecord {
  int cycle = 0;
  double time = 0.0;        // s at the end of the cycle
  degradation::DeepSOH soh;
  double capacity = 0.0;    // Ah discharged in the cycle; window capacity for cycle 0
  double resistance = 0.0;  // ohm, closed-form R_s at mid window
  double expansion = 0.0;   // m
  double reconstructed_lli = 0.0;
  std::optional<RptResult> rpt;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<CycleRecord> cycles;
  int rul_cycles = 0;
  bool reached_eol = false;
  std::string end_reason;
};

struct CampaignOptions {
  EngineOptions engine;
  RptOptions rpt;
  bool run_rpts = true;
  int sample_every = 0;  // record time series every n-th cycle; 0 records none
};

/// Cycles until the discharged capacity drops below the EOL threshold or
/// max_cycles is reached. rul_cycles counts the cycles completed above it.
Trajectory run_campaign(degradation::Cell cell, const Campaign& campaign, const CampaignOptions& options = {});

/// As run_campaign, leaving `cell` in its end-of-campaign state.
Trajectory run_campaign_in_place(degradation::Cell& cell, const Campaign& campaign,
                                 const CampaignOptions& options = {});

}  // namespace deepsoh::protocol
