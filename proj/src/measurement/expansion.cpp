#include "deepsoh/measurement/expansion.hpp"

#include "deepsoh/errors.hpp"

namespace deepsoh::measurement {

void ExpansionParameters::validate() const {
  if (b_sei < 0 || b_pl < 0 || b_in_pos < 0 || b_in_neg < 0) {
    throw DomainError("expansion coefficients must be non-negative");
  }
}

double lam_fraction(double capacity, double nominal) {
  if (!(nominal > 0)) throw DomainError("nominal capacity must be positive");
  return 1.0 - capacity / nominal;
}

double expansion_lam_term(const ExpansionParameters& p, const NominalCapacities& nominal, double capacity_pos,
                          double capacity_neg) {
  return p.b_in_pos * lam_fraction(capacity_pos, nominal.positive) +
         p.b_in_neg * lam_fraction(capacity_neg, nominal.negative);
}

double irreversible_expansion(const degradation::DeepSOH& soh, const NominalCapacities& nominal,
                              const ExpansionParameters& p) {
  return p.b_sei * soh.delta_sei + p.b_pl * soh.delta_pl * soh.delta_pl +
         expansion_lam_term(p, nominal, soh.capacity_pos, soh.capacity_neg);
}

}  // namespace deepsoh::measurement
