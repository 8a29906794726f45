#pragma once

#include "netwit/states.hpp"

namespace netwit {

/// Evaluated sides of a witness inequality. A violation (lhs exceeding rhs
/// beyond tol) certifies genuine network entanglement.
struct WitnessReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
  double margin = 0.0;  // lhs - rhs
  double tol = 1e-7;
};

WitnessReport make_report(std::string name, double lhs, double rhs,
                          double tol = 1e-7);

// H(a:b) + H(b:c) - H(b)  <=  S(rho_A) + S(rho_ABC) - S(rho_BC)
// for any measurement of a network 2-entangled tripartite state.
WitnessReport entropic_witness(const DensityMatrix& rho,
                               const ProductMeasurement& meas,
                               double tol = 1e-7);

// General k >= 3 version:
//   sum_{i=0}^{k-2} H(x^i : x^{i+1}) - sum_{i=1}^{k-2} H(x^i)
//     <=  S(X^0) + S(X^0 | X^1 ... X^{k-1}).
WitnessReport entropic_witness_k(const DensityMatrix& rho,
                                 const ProductMeasurement& meas,
                                 double tol = 1e-7);

// Largest GHZ_d^k fidelity attainable by a state that is not genuinely
// network k-entangled:
//   d (3 - k(d+1) + k^2 d + 2 sqrt(2 + k(d-1) - d)) / (1 + 4d - 2dk + k^2 d^2)
double ghz_fidelity_bound(int d, int k);

// <GHZ_d^k| rho |GHZ_d^k>  <=  ghz_fidelity_bound(d, k)
WitnessReport fidelity_witness(const DensityMatrix& rho, int d, int k,
                               double tol = 1e-7);

/// Coincidence-probability bounds for a state of GHZ fidelity F:
/// pmax bounds P(a=y) against an outside system, pmin lower-bounds P(a=b)
/// inside the state. Both measured in the computational basis.
struct LemmaBounds {
  double pmax;  // 1 + (1/d - 1) F + 2 sqrt(F (1-F) / d)
  double pmin;  // F
};

LemmaBounds lemma_bounds(double F, int d);

}  // namespace netwit
