#include "deepsoh/protocol/campaign.hpp"

#include "deepsoh/errors.hpp"
#include "deepsoh/measurement/resistance.hpp"

namespace deepsoh::protocol {

using degradation::Cell;

void Campaign::validate() const {
  if (cycle.empty()) throw InputError("campaign has no cycle steps");
  for (const auto& s : cycle) s.validate();
  if (rpt_every < 1) throw InputError("rpt_every must be at least 1");
  if (!(eol_capacity_fraction > 0 && eol_capacity_fraction <= 1)) {
    throw InputError("eol_capacity_fraction must lie in (0, 1]");
  }
  if (max_cycles < 0) throw InputError("max_cycles must be non-negative");
}

Campaign second_life_campaign(const core::CellParameters& cell) {
  Campaign c;
  c.cycle = {
      constant_current({1.0 / 5.0, true}, {voltage_at_most(cell.v_min)}),
      rest_for(10.0),
      constant_current({-1.0 / 5.0, true}, {voltage_at_least(cell.v_max)}),
      constant_voltage(cell.v_max, {current_at_most({1.0 / 100.0, true})}),
      rest_for(18.0 * 3600.0),
  };
  return c;
}

namespace {

CycleRecord snapshot(const Cell& cell, int index, double capacity) {
  CycleRecord r;
  r.cycle = index;
  r.time = cell.time();
  r.soh = cell.soh();
  r.capacity = capacity;
  r.resistance = measurement::state_resistance(cell.model(), cell.soh());
  r.expansion = cell.model().expansion_of(cell.soh());
  r.reconstructed_lli = cell.reconstructed_lli();
  return r;
}

}  // namespace

Trajectory run_campaign(Cell cell, const Campaign& campaign, const CampaignOptions& options) {
  return run_campaign_in_place(cell, campaign, options);
}

Trajectory run_campaign_in_place(Cell& cell, const Campaign& campaign, const CampaignOptions& options) {
  campaign.validate();
  Trajectory out;
  const double threshold = campaign.eol_capacity_fraction * cell.model().nominal_capacity();

  out.cycles.push_back(snapshot(cell, 0, cell.window().capacity));
  if (options.run_rpts) out.cycles.back().rpt = run_rpt(cell, options.rpt, options.engine);
  if (out.cycles.back().capacity < threshold) {
    out.reached_eol = true;
    out.end_reason = "capacity below end-of-life threshold at start";
    return out;
  }

  for (int n = 1; n <= campaign.max_cycles; ++n) {
    const bool sampled = options.sample_every > 0 && (n - 1) % options.sample_every == 0;
    double discharged = 0.0;
    try {
      for (std::size_t k = 0; k < campaign.cycle.size(); ++k) {
        discharged += run_step(cell, campaign.cycle[k], options.engine, sampled ? &out.samples : nullptr, n,
                               static_cast<int>(k))
                          .discharged;
      }
      cell.complete_cycle();
    } catch (const CellDeadError& e) {
      out.reached_eol = true;
      out.end_reason = e.what();
      out.rul_cycles = n - 1;
      return out;
    }
    out.cycles.push_back(snapshot(cell, n, discharged));
    if (discharged < threshold) {
      out.reached_eol = true;
      out.end_reason = "capacity below end-of-life threshold";
      out.rul_cycles = n - 1;
      return out;
    }
    if (options.run_rpts && n % campaign.rpt_every == 0) {
      out.cycles.back().rpt = run_rpt(cell, options.rpt, options.engine);
    }
  }
  out.rul_cycles = campaign.max_cycles;
  out.end_reason = "max_cycles reached";
  return out;
}

}  // namespace deepsoh::protocol
