#include "deepsoh/core/particle.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "deepsoh/errors.hpp"

namespace deepsoh::core {

RadialMesh::RadialMesh(int shells_, double radius_)
    : shells(shells_), radius(radius_), dr(radius_ / shells_), total_volume(radius_ * radius_ * radius_ / 3.0) {
  if (shells < 2 || !(radius > 0)) throw DomainError("radial mesh needs >= 2 shells and a positive radius");
  const int n = shells + 1;
  volume.resize(n);
  face_area.resize(shells);
  for (int i = 0; i < n; ++i) {
    const double lo = std::max(0.0, (i - 0.5) * dr);
    const double hi = std::min(radius, (i + 0.5) * dr);
    volume[i] = (hi * hi * hi - lo * lo * lo) / 3.0;
  }
  for (int i = 0; i < shells; ++i) {
    const double r = (i + 0.5) * dr;
    face_area[i] = r * r;
  }
}

ParticleProfile::ParticleProfile(std::shared_ptr<const RadialMesh> mesh, double max_concentration, double uniform)
    : mesh_(std::move(mesh)), c_max_(max_concentration), c_(mesh_->shells + 1, uniform) {}

ParticleProfile::ParticleProfile(std::shared_ptr<const RadialMesh> mesh, double max_concentration,
                                 std::vector<double> values)
    : mesh_(std::move(mesh)), c_max_(max_concentration), c_(std::move(values)) {
  if (c_.size() != static_cast<std::size_t>(mesh_->shells + 1)) {
    throw InputError("particle profile has " + std::to_string(c_.size()) + " nodes, mesh expects " +
                     std::to_string(mesh_->shells + 1));
  }
}

double ParticleProfile::reduced_moles() const {
  return std::inner_product(c_.begin(), c_.end(), mesh_->volume.begin(), 0.0);
}

double ParticleProfile::average() const { return reduced_moles() / mesh_->total_volume; }

ParticleProfile step_particle_diffusion(const ParticleProfile& state, double diffusivity, double surface_flux,
                                        double dt) {
  if (!(dt > 0)) throw DomainError("diffusion step needs dt > 0");
  if (!std::isfinite(surface_flux)) throw DomainError("diffusion step needs a finite surface flux");
  const RadialMesh& m = state.mesh();
  const int n = m.shells + 1;
  const auto c = state.concentrations();

  // tridiagonal system  lower[i] c'_{i-1} + diag[i] c'_i + upper[i] c'_{i+1} = rhs[i]
  std::vector<double> diag(n), upper(n, 0.0), rhs(n);
  const double k = diffusivity / m.dr;
  for (int i = 0; i < n; ++i) {
    const double west = i > 0 ? k * m.face_area[i - 1] : 0.0;
    const double east = i < n - 1 ? k * m.face_area[i] : 0.0;
    diag[i] = m.volume[i] / dt + west + east;
    upper[i] = -east;
    rhs[i] = m.volume[i] * c[i] / dt;
  }
  rhs[n - 1] -= surface_flux * m.radius * m.radius;

  // Thomas elimination; lower[i] == upper[i-1] by symmetry
  for (int i = 1; i < n; ++i) {
    const double w = upper[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> out(n);
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i) out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];

  const double c_max = state.max_concentration();
  for (int i = 0; i < n; ++i) {
    if (out[i] < 0.0 || out[i] > c_max) {
      std::ostringstream msg;
      msg.imbue(std::locale::classic());
      msg << "particle concentration " << out[i] << " mol/m^3 at node " << i << " leaves [0, " << c_max << "]";
      throw SaturationError(msg.str());
    }
  }
  return ParticleProfile(state.mesh_ptr(), c_max, std::move(out));
}

}  // namespace deepsoh::core
