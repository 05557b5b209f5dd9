#pragma once

#include <memory>

#include "deepsoh/core/particle.hpp"
#include "deepsoh/core/window.hpp"
#include "deepsoh/degradation/mechanisms.hpp"
#include "deepsoh/model.hpp"

namespace deepsoh::degradation {

/// One simulated cell: particle profiles coupled to the degradation state.
///
/// Lithium consumed by side reactions is drawn from the negative particle, so
/// the lithium left in both particles always equals n_Li,0 (1 - LLI).
class Cell {
 public:
  /// Pristine cell, equilibrated at the given state of charge of its window.
  static Cell pristine(std::shared_ptr<const Model> model, double soc = 1.0);

  /// Equilibrated cell carrying an arbitrary degradation state. Lithium lost
  /// beyond what the films hold is attributed to past active-material loss;
  /// throws DomainError if the films alone would exceed the state's LLI.
  static Cell at_state(std::shared_ptr<const Model> model, const DeepSOH& soh, double soc = 1.0);

  /// Reassembles a cell from serialized parts.
  static Cell restore(std::shared_ptr<const Model> model, const DeepSOH& soh, core::ParticleState particles,
                      double lam_lithium, double time);

  const Model& model() const { return *model_; }
  const std::shared_ptr<const Model>& model_ptr() const { return model_; }
  const DeepSOH& soh() const { return soh_; }
  const core::ParticleState& particles() const { return particles_; }
  double lam_lithium() const { return lam_lithium_; }
  double time() const { return time_; }

  bool aging() const { return aging_; }
  void set_aging(bool on) { aging_ = on; }

  /// Mean stoichiometries.
  double x() const { return particles_.negative.average_stoichiometry(); }
  double y() const { return particles_.positive.average_stoichiometry(); }

  double film_resistance() const;
  double terminal_voltage(double current) const;
  double open_circuit_voltage() const;
  /// Lithium in both particles, mol.
  double particle_lithium() const;
  /// LLI rebuilt from film thicknesses and the LAM lithium tally.
  double reconstructed_lli() const;
  core::StoichiometryWindow window() const;

  /// Advances particles and degradation by dt at constant current. Leaves the
  /// cell untouched if any error is thrown.
  void advance(double current, double dt);

  /// Terminal voltage after a particle-only step, without committing it.
  double trial_voltage(double current, double dt) const;

  /// Applies fatigue for the cycle just finished and resets stress extrema.
  void complete_cycle();

  const StressExtrema& stress(core::Electrode e) const {
    return e == core::Electrode::positive ? stress_pos_ : stress_neg_;
  }

 private:
  Cell(std::shared_ptr<const Model> model, const DeepSOH& soh, core::ParticleState particles, double lam_lithium);

  core::ParticleState step_particles(double current, double side_rate, double dt) const;
  void observe_stress();

  std::shared_ptr<const Model> model_;
  DeepSOH soh_;
  core::ParticleState particles_;
  double lam_lithium_ = 0.0;  // mol
  double time_ = 0.0;
  double side_rate_ = 0.0;    // mol/s, last side-reaction draw
  bool aging_ = true;
  StressExtrema stress_pos_, stress_neg_;
};

}  // namespace deepsoh::degradation
