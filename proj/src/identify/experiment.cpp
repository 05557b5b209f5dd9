#include "deepsoh/identify/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <future>
#include <limits>

#include "deepsoh/measurement/resistance.hpp"

namespace deepsoh::identify {

using degradation::DeepSOH;

protocol::Trajectory simulate_from_state(std::shared_ptr<const Model> model, const DeepSOH& state,
                                         const protocol::Campaign& campaign,
                                         const protocol::CampaignOptions& options) {
  return protocol::run_campaign(degradation::Cell::at_state(std::move(model), state, 1.0), campaign, options);
}

int predict_rul(std::shared_ptr<const Model> model, const DeepSOH& state, const protocol::Campaign& campaign,
                const protocol::CampaignOptions& options) {
  return simulate_from_state(std::move(model), state, campaign, options).rul_cycles;
}

void AmbiguityConfig::validate() const {
  if (members < 1) throw InputError("ambiguity experiment needs at least one member");
  if (jobs < 1) throw InputError("jobs must be at least 1");
  if (!(capacity_pos_fraction > 0 && capacity_neg_fraction > 0)) {
    throw InputError("capacity fractions must be positive");
  }
  if (!(lli >= 0 && lli < 1)) throw InputError("lli must lie in [0, 1)");
  if (!(sei_thickness >= 0)) throw InputError("sei_thickness must be non-negative");
}

namespace {

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

AmbiguityReport ambiguity_experiment(std::shared_ptr<const Model> model, const AmbiguityConfig& config,
                                     const protocol::Campaign& campaign, const protocol::CampaignOptions& options) {
  config.validate();
  campaign.validate();
  AmbiguityReport report;
  const auto& cell = model->cell();

  // the shared measurement: resistance of an SEI-only film of the configured thickness
  DeepSOH anchor;
  anchor.delta_sei = config.sei_thickness;
  anchor.capacity_pos = config.capacity_pos_fraction * cell.positive.nominal_capacity;
  anchor.capacity_neg = config.capacity_neg_fraction * cell.negative.nominal_capacity;
  anchor.lli = config.lli;
  report.target = measure(*model, anchor);
  report.target.expansion.reset();

  InversionOptions inversion;
  inversion.lli_budget = config.lli_budget;
  report.family = invert_without_expansion(*model, report.target, inversion);
  if (report.family.kind != ResultKind::family) {
    throw DomainError("configured measurement admits no family of states: " + report.family.diagnostic);
  }

  const int n = config.members;
  report.members.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& m = report.members[i];
    m.initial = report.family.member(report.target, (i + 1.0) / (n + 1.0));
    m.measured = measure(*model, m.initial);
  }

  protocol::CampaignOptions run = options;
  run.run_rpts = true;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      auto& m = report.members[i];
      m.trajectory = simulate_from_state(model, m.initial, campaign, run);
      try {
        m.recovered = invert_with_expansion(*model, m.measured);
      } catch (const AmbiguousRootsError& e) {
        m.recovered.kind = ResultKind::infeasible;
        m.recovered.diagnostic = e.what();
      }
    }
  };
  std::vector<std::future<void>> pool;
  for (int j = 0; j < std::min(config.jobs, n); ++j) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();

  double r_min = std::numeric_limits<double>::infinity(), r_max = 0.0, r_sum = 0.0;
  report.min_expansion_gap = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  report.min_rul_gap_fraction = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (const auto& m : report.members) report.max_rul = std::max(report.max_rul, m.trajectory.rul_cycles);
  for (int i = 0; i < n; ++i) {
    const auto& a = report.members[i];
    const auto& rpt_a = *a.trajectory.cycles.front().rpt;
    r_min = std::min(r_min, rpt_a.resistance);
    r_max = std::max(r_max, rpt_a.resistance);
    r_sum += rpt_a.resistance;
    if (a.recovered.solution) {
      report.max_recovery_error =
          std::max({report.max_recovery_error, relative(a.recovered.solution->delta_sei, a.initial.delta_sei),
                    relative(a.recovered.solution->delta_pl, a.initial.delta_pl)});
    } else {
      report.max_recovery_error = std::numeric_limits<double>::infinity();
    }
    for (int j = i + 1; j < n; ++j) {
      const auto& b = report.members[j];
      const auto& rpt_b = *b.trajectory.cycles.front().rpt;
      report.max_curve_gap = std::max({report.max_curve_gap, measurement::max_curve_gap(rpt_a.discharge, rpt_b.discharge),
                                       measurement::max_curve_gap(rpt_a.charge, rpt_b.charge)});
      report.min_expansion_gap = std::min(report.min_expansion_gap, std::abs(rpt_a.expansion - rpt_b.expansion));
      if (rpt_a.esoh && rpt_b.esoh) {
        const auto& ea = *rpt_a.esoh;
        const auto& eb = *rpt_b.esoh;
        report.max_esoh_deviation =
            std::max({report.max_esoh_deviation, relative(ea.capacity, eb.capacity),
                      relative(ea.capacity_pos, eb.capacity_pos), relative(ea.capacity_neg, eb.capacity_neg),
                      relative(ea.x0, eb.x0), relative(ea.y0, eb.y0)});
      }
      const double gap = std::abs(a.trajectory.rul_cycles - b.trajectory.rul_cycles);
      report.min_rul_gap_fraction =
          std::min(report.min_rul_gap_fraction, report.max_rul > 0 ? gap / report.max_rul : 0.0);
    }
  }
  report.resistance_spread = n > 0 ? (r_max - r_min) / (r_sum / n) : 0.0;
  return report;
}

}  // namespace deepsoh::identify
