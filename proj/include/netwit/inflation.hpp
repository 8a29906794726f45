#pragma once

#include <optional>

#include "netwit/sdp.hpp"

namespace netwit {

/// Solution of a ring-inflation program: the two six-qubit extension states
/// plus solver outcome. tau lives on (A1,B1,C1,A2,B2,C2), gamma on
/// (A3,B3,C3,A4,B4,C4).
struct InflationCertificate {
  std::string target_name;  // "ghz", "w", "custom" or "feasibility"
  std::optional<Vector> target;
  std::optional<DensityMatrix> tau;
  std::optional<DensityMatrix> gamma;
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  SolveStatus solver_status = SolveStatus::numerical_error;
  SolveStats stats;
  std::string message;
  std::optional<Matrix> rho_block_dual;  // dual of the triangle-state block
};

// Ring-inflation semidefinite relaxation. Exactly one of target / fixed_rho
// must be given: a target vector on (2,2,2) yields the fidelity-maximization
// program over relaxation-feasible triangle states; a fixed state yields the
// feasibility program with the triangle marginal pinned to it.
// Throws std::invalid_argument on misuse.
SdpProblem build_ring_inflation(const std::optional<Vector>& target,
                                const std::optional<DensityMatrix>& fixed_rho);

// Solve any ring-inflation problem and package the certificate.
InflationCertificate solve_ring_inflation(const SdpProblem& problem,
                                          SolverBackend& backend,
                                          const SolveOptions& opts = {});

struct CertifyResult {
  bool certified_genuine = false;
  double slack = std::numeric_limits<double>::quiet_NaN();
  InflationCertificate certificate;
};

// Slack-minimization feasibility test: infeasibility of the relaxation
// (slack above feas_tol) certifies genuine network 3-entanglement; a feasible
// certificate is inconclusive.
CertifyResult certify_state(const DensityMatrix& rho, SolverBackend& backend,
                            double feas_tol = 1e-6);

// Linear witness from the dual of a solved fidelity program: tr[W rho] is at
// most the program optimum for every relaxation-feasible rho, and at least
// the target fidelity of rho. Requires optimal status on a target problem.
HermitianOperator extract_dual_witness(const InflationCertificate& cert);

/// Residuals of one (tau, gamma) pair against all ring-inflation constraints.
struct CertificateCheck {
  bool ok = false;
  double symmetry_residual = 0.0;     // max over tau and gamma
  double triangle_residual = 0.0;     // tau marginals vs each other / rho
  double ring_residual = 0.0;         // the three gamma-tau pairings
  double min_ppt_eig = 0.0;           // most negative PPT-block eigenvalue
};

CertificateCheck verify_certificate(const std::optional<DensityMatrix>& rho,
                                    const DensityMatrix& tau,
                                    const DensityMatrix& gamma,
                                    double tol = 1e-6);

// Evaluate one equality constraint on explicit block values (diagnostics).
double eval_constraint(const EqConstraint& eq,
                       const std::vector<Matrix>& blocks);

}  // namespace netwit
