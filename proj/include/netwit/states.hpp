#pragma once

#include "netwit/qlinalg.hpp"

namespace netwit {

/// Joint pmf over discrete outcomes of local measurements. Flat array over
/// the outcome grid, leftmost variable most significant.
struct JointDistribution {
  std::vector<int> cardinalities;
  std::vector<double> probabilities;

  void validate(const Tolerances& tol = {}) const;
  JointDistribution marginal(const SubsystemSelector& vars) const;
};

/// One POVM per party; each POVM is a list of PSD effects summing to identity.
struct ProductMeasurement {
  std::vector<std::vector<HermitianOperator>> povms;

  void validate(const Tolerances& tol = {}) const;
  int num_parties() const { return static_cast<int>(povms.size()); }
};

// |GHZ_d^k> = sum_j |j>^{tensor k} / sqrt(d)
Vector ghz_vector(int d, int k);
DensityMatrix ghz_state(int d, int k);

// |W> = (|001> + |010> + |100>) / sqrt(3)
Vector w_vector();
DensityMatrix w_state();

// Projective measurement in the computational basis of every party.
ProductMeasurement computational_measurement(const std::vector<int>& dims);

// P(outcomes) = tr[rho (tensor of effects)]; tiny negatives are clamped and
// the pmf renormalized.
JointDistribution measure(const DensityMatrix& rho,
                          const ProductMeasurement& meas,
                          const Tolerances& tol = {});

// Shannon entropy (bits) of the marginal on vars.
double shannon_entropy(const JointDistribution& p,
                       const SubsystemSelector& vars);

// H(x) + H(y) - H(x,y); x and y must be disjoint.
double mutual_information(const JointDistribution& p,
                          const SubsystemSelector& x,
                          const SubsystemSelector& y);

// sum_i P(x = i, y = i) for two single variables of equal cardinality.
double coincidence_probability(const JointDistribution& p,
                               const SubsystemSelector& x,
                               const SubsystemSelector& y);

}  // namespace netwit
