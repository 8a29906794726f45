#pragma once

#include <array>

#include "netwit/sdp.hpp"

namespace netwit {

/// Explicit generative model of a network 2-entangled tripartite state: a
/// finite mixture over shared-randomness branches, each holding three
/// bipartite hidden sources and one CPTP map per party. The sources live on
/// (A',B''), (B',C'') and (C',A''); party X's map takes (X', X'') of local
/// dimension hidden_dim each to one qubit. Choi matrices are indexed
/// input-first: J = sum_ij |i><j| (x) Map(|i><j|).
struct NetworkBranch {
  DensityMatrix src_ab, src_bc, src_ca;
  std::array<Matrix, 3> choi;  // party A, B, C
};

struct NetworkModel {
  int hidden_dim = 2;
  std::vector<NetworkBranch> branches;
  std::vector<double> weights;

  // Throws std::domain_error on invalid sources, non-CPTP Choi matrices or a
  // malformed weight distribution.
  void validate(double cptp_tol = 1e-8) const;
};

struct SeesawConfig {
  int hidden_dim = 2;
  int branches = 4;
  int restarts = 20;
  int max_iters = 80;
  double improvement_tol = 1e-7;
  uint64_t seed = 1;
};

// Mix the branch outputs: rho = sum_l w_l (Map_A (x) Map_B (x) Map_C)(sigma_l).
DensityMatrix assemble_state(const NetworkModel& model);

// Choi matrix from Kraus operators (helper for building explicit models).
Matrix choi_from_kraus(const std::vector<Matrix>& kraus, int d_in, int d_out);

struct SeesawResult {
  NetworkModel model;
  double fidelity = 0.0;
  std::vector<double> history;  // objective after each sweep, best restart
  int restarts_done = 0;
};

// Alternating maximization of <target| rho |target> over NetworkModels:
// sources update as dominant eigenvectors of their effective operators,
// Choi matrices by small CPTP-constrained SDPs, weights by concentrating on
// the best branches. Throws std::runtime_error if every restart fails.
SeesawResult seesaw_maximize(const Vector& target, const SeesawConfig& cfg,
                             SolverBackend& backend);

// Random valid models and their states; deterministic in the seed.
std::vector<NetworkModel> generate_sound_models(int n, const SeesawConfig& cfg,
                                                uint64_t seed);
std::vector<DensityMatrix> generate_sound_states(int n, const SeesawConfig& cfg,
                                                 uint64_t seed);

// Explicit ring-inflation certificate for a model's state: tau from two
// shared-randomness-correlated triangles, gamma from the hexagon wiring.
// Every ring-inflation constraint holds for the pair by construction.
std::pair<DensityMatrix, DensityMatrix> inflation_certificate(
    const NetworkModel& model);

}  // namespace netwit
