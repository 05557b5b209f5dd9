#include "deepsoh/degradation/parameters.hpp"

#include <string>

#include "deepsoh/errors.hpp"

namespace deepsoh::degradation {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}
}  // namespace

void DeepSOH::validate() const {
  require(delta_sei >= 0, "delta_sei must be non-negative");
  require(delta_pl >= 0, "delta_pl must be non-negative");
  require(capacity_pos > 0, "positive electrode capacity must be positive");
  require(capacity_neg > 0, "negative electrode capacity must be positive");
  require(lli >= 0 && lli < 1, "LLI must lie in [0, 1)");
}

void DegradationParameters::validate() const {
  require(sei.rate_constant >= 0, "sei.rate_constant must be non-negative");
  require(sei.alpha > 0 && sei.alpha < 1, "sei.alpha must lie in (0, 1)");
  require(sei.potential > 0, "sei.potential must be positive");
  require(sei.solvent_concentration > 0, "sei.solvent_concentration must be positive");
  require(sei.diffusivity > 0, "sei.diffusivity must be positive");
  require(sei.molar_volume > 0, "sei.molar_volume must be positive");
  require(sei.conductivity > 0, "sei.conductivity must be positive");
  require(plating.rate_constant >= 0, "plating.rate_constant must be non-negative");
  require(plating.alpha > 0 && plating.alpha < 1, "plating.alpha must lie in (0, 1)");
  require(plating.molar_volume > 0, "plating.molar_volume must be positive");
  require(plating.conductivity > 0, "plating.conductivity must be positive");
  require(lam.beta1_pos >= 0 && lam.beta2_pos >= 0 && lam.beta1_neg >= 0 && lam.beta2_neg >= 0,
          "lam betas must be non-negative");
  require(lam.critical_stress_pos > 0 && lam.critical_stress_neg > 0, "lam critical stresses must be positive");
  require(lam.exponent >= 1, "lam.exponent must be at least 1");
}

}  // namespace deepsoh::degradation
