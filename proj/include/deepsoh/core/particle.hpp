#pragma once

#include <memory>
#include <span>
#include <vector>

#include "deepsoh/core/ocp.hpp"

namespace deepsoh::core {

/// Vertex-centred finite-volume mesh on a sphere: nodes at r_i = i*dr,
/// i = 0..shells, each owning the shell between its neighbouring midpoints.
/// Volumes and face areas are stored without the 4*pi factor.
struct RadialMesh {
  RadialMesh(int shells, double radius);

  int shells;
  double radius;
  double dr;
  std::vector<double> volume;     // per node
  std::vector<double> face_area;  // between node i and i+1
  double total_volume;            // radius^3 / 3
};

/// Radial lithium concentration inside one representative particle.
class ParticleProfile {
 public:
  ParticleProfile() = default;
  ParticleProfile(std::shared_ptr<const RadialMesh> mesh, double max_concentration, double uniform);
  ParticleProfile(std::shared_ptr<const RadialMesh> mesh, double max_concentration, std::vector<double> values);

  std::span<const double> concentrations() const { return c_; }
  const RadialMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const RadialMesh>& mesh_ptr() const { return mesh_; }
  double max_concentration() const { return c_max_; }

  double surface() const { return c_.back(); }
  double average() const;
  double surface_stoichiometry() const { return surface() / c_max_; }
  double average_stoichiometry() const { return average() / c_max_; }
  /// Moles in one particle divided by 4*pi.
  double reduced_moles() const;

 private:
  std::shared_ptr<const RadialMesh> mesh_;
  double c_max_ = 0.0;
  std::vector<double> c_;
};

/// Backward-Euler diffusion step with a prescribed outward molar flux
/// (mol/m^2/s, positive = lithium leaving the particle). Throws
/// SaturationError if any node would leave [0, c_max]; never clamps.
ParticleProfile step_particle_diffusion(const ParticleProfile& state, double diffusivity, double surface_flux,
                                        double dt);

/// Both electrodes of the single-particle model.
struct ParticleState {
  ParticleProfile positive;
  ParticleProfile negative;

  const ParticleProfile& at(Electrode e) const { return e == Electrode::positive ? positive : negative; }
};

}  // namespace deepsoh::core
