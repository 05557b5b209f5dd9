#pragma once

#include <memory>

#include "deepsoh/core/parameters.hpp"
#include "deepsoh/core/particle.hpp"
#include "deepsoh/degradation/parameters.hpp"
#include "deepsoh/measurement/expansion.hpp"

namespace deepsoh {

struct ModelParameters {
  core::CellParameters cell;
  degradation::DegradationParameters degradation;
  measurement::ExpansionParameters expansion;
};

/// Validated parameter set plus the quantities fixed at construction: the
/// pristine lithium inventory, the film-covered area, and the radial meshes.
/// Immutable, so one instance may be shared by cells on different threads.
class Model {
 public:
  explicit Model(ModelParameters params);

  static std::shared_ptr<const Model> create(ModelParameters params);

  const ModelParameters& parameters() const { return params_; }
  const core::CellParameters& cell() const { return params_.cell; }
  const degradation::DegradationParameters& degradation() const { return params_.degradation; }
  const measurement::ExpansionParameters& expansion() const { return params_.expansion; }
  const degradation::LithiumBookkeeping& books() const { return books_; }

  double initial_inventory() const { return books_.initial_inventory; }
  double film_area() const { return books_.film_area; }
  /// Capacity of the pristine cell across [V_min, V_max], Ah.
  double nominal_capacity() const { return nominal_capacity_; }
  measurement::NominalCapacities nominal_electrodes() const;
  /// C-rate multiple expressed in amperes.
  double c_rate(double multiple) const { return multiple * nominal_capacity_; }
  /// Current used for the resistance pulse and the kinetic term h4.
  double probe_current() const { return c_rate(1.0 / 20.0); }

  std::shared_ptr<const core::RadialMesh> mesh(core::Electrode e) const {
    return e == core::Electrode::positive ? mesh_pos_ : mesh_neg_;
  }

  degradation::DeepSOH pristine_state() const;

  /// Cell-level film resistance, ohm.
  double film_resistance(const degradation::DeepSOH& soh) const;
  double expansion_of(const degradation::DeepSOH& soh) const;
  /// Lithium held by the SEI and plated films, mol.
  double film_lithium(const degradation::DeepSOH& soh) const;

 private:
  ModelParameters params_;
  degradation::LithiumBookkeeping books_;
  double nominal_capacity_ = 0.0;
  std::shared_ptr<const core::RadialMesh> mesh_pos_, mesh_neg_;
};

}  // namespace deepsoh
