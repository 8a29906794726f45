#pragma once

#include "netwit/inflation.hpp"

namespace netwit {

struct PostselectionSample {
  double p = 0.0;
  double max_fidelity = std::numeric_limits<double>::quiet_NaN();
  SolveStatus status = SolveStatus::numerical_error;
};

/// Scan of the postselected relaxation over detection probabilities p.
/// p_critical is the smallest p at which the maximal postselected fidelity
/// drops below 1, so certification becomes possible for p above it.
struct PostselectionScan {
  std::string target;  // "ghz", "w" or "custom"
  double tol_p = 0.0;
  std::optional<double> p_critical;
  std::vector<PostselectionSample> samples;  // sorted by p
};

// Ring-inflation program with a postselection loophole: the reconstructed
// state rho_p is tied to the unknown true marginal rho by rho - p rho_p >= 0,
// and the objective is the target fidelity of rho_p. p = 1 forces
// rho_p = rho and reduces to the unpostselected bound.
SdpProblem build_postselected(const Vector& target, double p);

// Bisection for the critical postselection probability. On solver failure at
// any scan point, returns the collected samples with p_critical unset.
PostselectionScan critical_probability(const Vector& target, double tol_p,
                                       SolverBackend& backend,
                                       const std::string& target_name =
                                           "custom",
                                       int verbosity = 0);

}  // namespace netwit
