#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "deepsoh/identify/experiment.hpp"
#include "deepsoh/degradation/cell.hpp"
#include "deepsoh/measurement/resistance.hpp"
#include "support.hpp"

using namespace deepsoh;
using namespace deepsoh::identify;
using degradation::DeepSOH;
using testing::rel;

namespace {

// random admissible state: films plus some lithium lost to active material
DeepSOH random_state(const Model& model, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sei(20e-9, 500e-9), pl(5e-9, 100e-9), cp(6.6, 7.5), cn(5.0, 5.8),
      extra(0.0, 0.08);
  DeepSOH s{sei(rng), pl(rng), cp(rng), cn(rng), 0.0};
  s.lli = model.film_lithium(s) / model.initial_inventory() + extra(rng);
  return s;
}

double film_area_resistance(const Model& m, const FilmPoint& p) {
  return p.delta_sei / m.degradation().sei.conductivity + p.delta_pl / m.degradation().plating.conductivity;
}

protocol::Campaign demo_campaign() { return testing::demo_protocol().campaign; }

protocol::CampaignOptions quick() {
  protocol::CampaignOptions o;
  o.run_rpts = false;
  return o;
}

}  // namespace

TEST_CASE("zero film resistance collapses the family to the origin") {
  auto model = testing::demo_model();
  const auto y = measure(*model, {0, 0, 7.3, 5.5, 0.1});
  auto without = y;
  without.expansion.reset();
  const auto r = invert_without_expansion(*model, without);
  REQUIRE(r.kind == ResultKind::family);
  CHECK(r.segment_start.delta_sei == 0.0);
  CHECK(r.segment_start.delta_pl == 0.0);
  CHECK(r.segment_end.delta_sei == 0.0);
  CHECK(r.segment_end.delta_pl == 0.0);
  const auto u = invert_with_expansion(*model, y);
  REQUIRE(u.kind == ResultKind::unique);
  CHECK(u.solution->delta_sei == 0.0);
  CHECK(u.solution->delta_pl == 0.0);
}

TEST_CASE("every family member reproduces the measurement; expansion differs along it") {
  auto model = testing::demo_model();
  const DeepSOH truth{300e-9, 25e-9, 7.3, 5.5, 0.15};
  auto y = measure(*model, truth);
  y.expansion.reset();
  for (bool budget : {true, false}) {
    InversionOptions o;
    o.lli_budget = budget;
    const auto r = invert_without_expansion(*model, y, o);
    REQUIRE(r.kind == ResultKind::family);
    CHECK(rel(film_area_resistance(*model, r.segment_start), r.film_resistance) < 1e-10);
    CHECK(rel(film_area_resistance(*model, r.segment_end), r.film_resistance) < 1e-10);
    double prev_expansion = -1.0;
    for (int k = 0; k <= 10; ++k) {
      const auto s = r.member(y, k / 10.0);
      auto m = measure(*model, s);
      CHECK(measurement_residual(m, y) < 1e-3);
      CHECK(model->film_lithium(s) <= model->initial_inventory() * s.lli * (1 + 1e-12) + (budget ? 0.0 : 1e9));
      if (k > 0) CHECK(*m.expansion != prev_expansion);
      prev_expansion = *m.expansion;
    }
  }
  InversionOptions off;
  off.lli_budget = false;
  const auto full = invert_without_expansion(*model, y, off);
  CHECK(full.segment_start.delta_pl == 0.0);
  CHECK(full.segment_end.delta_sei == 0.0);
  CHECK(full.segment_start.delta_sei ==
        doctest::Approx(model->degradation().sei.conductivity * full.film_resistance).epsilon(1e-12));
  CHECK(full.segment_end.delta_pl ==
        doctest::Approx(model->degradation().plating.conductivity * full.film_resistance).epsilon(1e-12));
}

TEST_CASE("resistance below the kinetic floor is infeasible") {
  auto model = testing::demo_model();
  auto y = measure(*model, {0, 0, 7.3, 5.5, 0.1});
  y.resistance *= 0.9;
  y.expansion.reset();
  CHECK(invert_without_expansion(*model, y).kind == ResultKind::infeasible);
  y.expansion = 0.0;
  CHECK(invert_with_expansion(*model, y).kind == ResultKind::infeasible);
}

TEST_CASE("expansion below the capacity-only term is infeasible when films are present") {
  auto model = testing::demo_model();
  auto y = measure(*model, {300e-9, 25e-9, 7.3, 5.5, 0.15});
  const double h5 = measurement::expansion_lam_term(model->expansion(), model->nominal_electrodes(), 7.3, 5.5);
  y.expansion = 0.5 * h5;
  const auto r = invert_with_expansion(*model, y);
  CHECK(r.kind == ResultKind::infeasible);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("inversion with expansion recovers random states") {
  auto model = testing::demo_model();
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const auto truth = random_state(*model, rng);
    const auto r = invert_with_expansion(*model, measure(*model, truth));
    REQUIRE(r.kind == ResultKind::unique);
    const auto& s = *r.solution;
    CHECK(rel(s.delta_sei, truth.delta_sei) < 1e-3);
    CHECK(rel(s.delta_pl, truth.delta_pl) < 1e-3);
    CHECK(rel(s.capacity_pos, truth.capacity_pos) < 1e-3);
    CHECK(rel(s.capacity_neg, truth.capacity_neg) < 1e-3);
    CHECK(rel(s.lli, truth.lli) < 1e-3);
    CHECK(r.residual < 1e-6);
  }
}

TEST_CASE("the unique solution lies on the family segment") {
  auto model = testing::demo_model();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto truth = random_state(*model, rng);
    const auto y = measure(*model, truth);
    auto without = y;
    without.expansion.reset();
    const auto fam = invert_without_expansion(*model, without);
    const auto u = invert_with_expansion(*model, y);
    REQUIRE(fam.kind == ResultKind::family);
    REQUIRE(u.kind == ResultKind::unique);
    const FilmPoint p{u.solution->delta_sei, u.solution->delta_pl};
    CHECK(rel(film_area_resistance(*model, p), fam.film_resistance) < 1e-9);
    CHECK(p.delta_sei <= fam.segment_start.delta_sei * (1 + 1e-9));
    CHECK(p.delta_sei >= fam.segment_end.delta_sei * (1 - 1e-9));
    CHECK(p.delta_pl >= fam.segment_start.delta_pl * (1 - 1e-9));
    CHECK(p.delta_pl <= fam.segment_end.delta_pl * (1 + 1e-9));
  }
}

TEST_CASE("two admissible roots are reported, and the lithium budget can break the tie") {
  auto params = testing::demo_parameters();
  // moves the vertex of the expansion quadratic inside the admissible range
  params.expansion.b_pl = 2e9;
  auto model = Model::create(params);
  DeepSOH truth{100e-9, 75e-9, 7.3, 5.5, 0.0};
  truth.lli = model->film_lithium(truth) / model->initial_inventory() * (1 + 1e-6);
  const auto y = measure(*model, truth);
  DeepSOH other{};
  try {
    invert_with_expansion(*model, y);
    FAIL("expected two roots");
  } catch (const AmbiguousRootsError& e) {
    const auto& a = e.first();
    const auto& b = e.second();
    const bool a_is_truth = std::abs(a.delta_pl - truth.delta_pl) < 1e-12;
    other = a_is_truth ? b : a;
    const auto& found = a_is_truth ? a : b;
    CHECK(rel(found.delta_sei, truth.delta_sei) < 1e-6);
    CHECK(rel(found.delta_pl, truth.delta_pl) < 1e-6);
    CHECK(rel(other.delta_pl, 25e-9) < 1e-6);
    CHECK(rel(other.delta_sei, 300e-9) < 1e-6);
    CHECK(measurement_residual(measure(*model, other), y) < 1e-9);
  }
  REQUIRE(model->film_lithium(other) > model->initial_inventory() * truth.lli);
  InversionOptions o;
  o.tie_break_by_lli_budget = true;
  const auto r = invert_with_expansion(*model, y, o);
  REQUIRE(r.kind == ResultKind::unique);
  CHECK(rel(r.solution->delta_pl, truth.delta_pl) < 1e-6);
}

TEST_CASE("1% noise on resistance and expansion keeps film estimates within 15%") {
  auto model = testing::demo_model();
  const DeepSOH truth{250e-9, 50e-9, 7.3, 5.5, 0.2};
  const auto clean = measure(*model, truth);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise(0.0, 0.01);
  double worst = 0.0;
  int failures = 0;
  for (int k = 0; k < 100; ++k) {
    auto y = clean;
    y.resistance *= 1 + noise(rng);
    *y.expansion *= 1 + noise(rng);
    try {
      InversionOptions o;
      o.tolerance = 1e-3;
      const auto r = invert_with_expansion(*model, y, o);
      if (r.kind != ResultKind::unique) {
        ++failures;
        continue;
      }
      worst = std::max({worst, rel(r.solution->delta_sei, truth.delta_sei), rel(r.solution->delta_pl, truth.delta_pl)});
    } catch (const AmbiguousRootsError&) {
      ++failures;
    }
  }
  CHECK(failures == 0);
  CHECK(worst < 0.15);
  MESSAGE("worst film error under 1% noise: " << worst);
}

TEST_CASE("measurement vector validation") {
  MeasurementVector y{7.3, 5.5, 0.1, 0.0, std::nullopt};
  CHECK_THROWS_AS(y.validate(), DomainError);
  y.resistance = 0.01;
  y.expansion = -1e-6;
  CHECK_THROWS_AS(y.validate(), DomainError);
  y.expansion = 0.0;
  CHECK_NOTHROW(y.validate());
}

TEST_CASE("remaining life prediction") {
  auto model = testing::demo_model();
  const auto campaign = demo_campaign();

  const DeepSOH dead{100e-9, 0, 5.6, 4.0, 0.3};
  REQUIRE(degradation::Cell::at_state(model, dead).window().capacity < 0.7 * model->nominal_capacity());
  CHECK(predict_rul(model, dead, campaign, quick()) == 0);

  const DeepSOH truth{300e-9, 25e-9, 7.3, 5.5, 0.15};
  const auto identified = invert_with_expansion(*model, measure(*model, truth));
  REQUIRE(identified.kind == ResultKind::unique);
  const int own = predict_rul(model, truth, campaign, quick());
  const int predicted = predict_rul(model, *identified.solution, campaign, quick());
  CHECK(own > 0);
  CHECK(std::abs(predicted - own) <= 0.02 * own);

  auto y = measure(*model, truth);
  y.expansion.reset();
  const auto fam = invert_without_expansion(*model, y);
  const int a = predict_rul(model, fam.member(y, 0.1), campaign, quick());
  const int b = predict_rul(model, fam.member(y, 0.9), campaign, quick());
  CHECK(std::abs(a - b) > 0.1 * std::max(a, b));
}

TEST_CASE("ambiguity experiment with a single member") {
  auto model = testing::demo_model();
  AmbiguityConfig cfg;
  cfg.members = 1;
  auto campaign = demo_campaign();
  const auto report = ambiguity_experiment(model, cfg, campaign);
  REQUIRE(report.members.size() == 1);
  CHECK(report.members[0].trajectory.reached_eol);
  CHECK(report.max_rul == report.members[0].trajectory.rul_cycles);
  CHECK(report.min_rul_gap_fraction == 0.0);
}

TEST_CASE("ambiguity experiment with three members") {
  auto model = testing::demo_model();
  AmbiguityConfig cfg;
  cfg.jobs = 3;
  const auto report = ambiguity_experiment(model, cfg, demo_campaign());
  REQUIRE(report.members.size() == 3);
  CHECK(report.max_curve_gap < 5e-3);
  CHECK(report.resistance_spread < 5e-3);
  CHECK(report.min_expansion_gap > 0.0);
  for (std::size_t i = 1; i < 3; ++i) {
    const auto& prev = report.members[i - 1];
    const auto& cur = report.members[i];
    CHECK(cur.initial.delta_pl > prev.initial.delta_pl);
    CHECK(cur.trajectory.rul_cycles < prev.trajectory.rul_cycles);
    CHECK(cur.trajectory.cycles.front().expansion != prev.trajectory.cycles.front().expansion);
  }
  CHECK(report.min_rul_gap_fraction > 0.1);
  CHECK(report.max_recovery_error < 1e-3);

  AmbiguityConfig bad;
  bad.members = 0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}
