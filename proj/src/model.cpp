#include "deepsoh/model.hpp"

#include "deepsoh/core/window.hpp"
#include "deepsoh/degradation/mechanisms.hpp"
#include "deepsoh/measurement/resistance.hpp"

namespace deepsoh {

using core::Electrode;

Model::Model(ModelParameters params) : params_(std::move(params)) {
  params_.cell.validate();
  params_.degradation.validate();
  params_.expansion.validate();
  const auto& cell = params_.cell;
  books_.film_area = cell.reactive_area(Electrode::negative, cell.negative.nominal_capacity);
  books_.sei_molar_volume = params_.degradation.sei.molar_volume;
  books_.plating_molar_volume = params_.degradation.plating.molar_volume;
  books_.initial_inventory = core::pristine_lithium_inventory(cell);
  nominal_capacity_ = core::pristine_capacity(cell);
  mesh_pos_ = std::make_shared<const core::RadialMesh>(cell.radial_shells, cell.positive.particle_radius);
  mesh_neg_ = std::make_shared<const core::RadialMesh>(cell.radial_shells, cell.negative.particle_radius);
}

std::shared_ptr<const Model> Model::create(ModelParameters params) {
  return std::make_shared<const Model>(std::move(params));
}

measurement::NominalCapacities Model::nominal_electrodes() const {
  return {params_.cell.positive.nominal_capacity, params_.cell.negative.nominal_capacity};
}

degradation::DeepSOH Model::pristine_state() const {
  degradation::DeepSOH s;
  s.capacity_pos = params_.cell.positive.nominal_capacity;
  s.capacity_neg = params_.cell.negative.nominal_capacity;
  return s;
}

double Model::film_resistance(const degradation::DeepSOH& soh) const {
  return measurement::film_resistance_cell(soh, params_.degradation.sei.conductivity,
                                           params_.degradation.plating.conductivity, books_.film_area);
}

double Model::expansion_of(const degradation::DeepSOH& soh) const {
  return measurement::irreversible_expansion(soh, nominal_electrodes(), params_.expansion);
}

double Model::film_lithium(const degradation::DeepSOH& soh) const {
  return degradation::sei_lithium_moles(params_.degradation.sei, books_.film_area, soh.delta_sei) +
         degradation::plated_lithium_moles(params_.degradation.plating, books_.film_area, soh.delta_pl);
}

}  // namespace deepsoh
