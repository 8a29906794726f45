#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netwit/qlinalg.hpp"

namespace netwit {

enum class Sense { maximize, minimize };

// One real-valued term over an entry of a Hermitian block (row <= col):
//   re_coeff * Re X[row,col] + im_coeff * Im X[row,col].
struct LinearTerm {
  int block = 0;
  int row = 0;
  int col = 0;
  double re_coeff = 0.0;
  double im_coeff = 0.0;
};

/// Builder for real-linear functionals over Hermitian block entries.
struct LinearExpr {
  std::vector<LinearTerm> terms;

  // Adds Re[w * X_rc] (entries below the diagonal are folded onto the
  // canonical upper triangle via X_rc = conj(X_cr)).
  void add_entry(int block, int r, int c, Complex w);
  // Adds w * tr[T X] for Hermitian T.
  void add_inner(int block, const Matrix& T, double w = 1.0);
  void add_trace(int block, int side, double w = 1.0);
};

struct EqConstraint {
  std::vector<LinearTerm> terms;
  double rhs = 0.0;
};

struct PsdBlock {
  std::string name;
  int side = 0;
};

/// Solver-agnostic SDP: complex Hermitian PSD block variables, real linear
/// equality constraints over their entries, and a real linear objective.
struct SdpProblem {
  std::vector<PsdBlock> blocks;
  std::vector<EqConstraint> eq_constraints;
  std::vector<LinearTerm> objective;
  Sense sense = Sense::maximize;
  // Optional strictly feasible starting guess, keyed by block name.
  std::map<std::string, Matrix> start_hint;

  int add_block(const std::string& name, int side);
  int block_index(const std::string& name) const;  // -1 if absent
  void add_eq(LinearExpr expr, double rhs);
  void validate() const;
};

enum class SolveStatus { optimal, near_optimal, infeasible, numerical_error };

std::string to_string(SolveStatus s);

struct SolveStats {
  int newton_steps = 0;
  double duality_gap = std::numeric_limits<double>::quiet_NaN();
  double max_eq_residual = 0.0;  // over the original equality constraints
  double min_block_eig = 0.0;
  double runtime_sec = 0.0;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::numerical_error;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<Matrix> blocks;       // primal block values
  std::vector<Matrix> block_duals;  // PSD dual per block (same indexing)
  std::vector<double> eq_duals;     // multiplier per original constraint
  SolveStats stats;
  std::string message;
};

struct SolveOptions {
  double gap_tol = 1e-6;
  int max_newton = 800;
  // Early exits in the problem's own sense. stop_value: stop once the
  // feasible primal value reaches it (min: <=, max: >=). stop_bound: stop
  // once the certified optimum bound crosses it (min: optimum > v,
  // max: optimum < v).
  std::optional<double> stop_value;
  std::optional<double> stop_bound;
  int verbosity = 0;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SdpSolution solve(const SdpProblem& problem,
                            const SolveOptions& opts = {}) = 0;
};

// Known backends: "ipm" (dense barrier interior-point method).
// Throws std::invalid_argument for unknown names.
std::unique_ptr<SolverBackend> make_backend(const std::string& name = "ipm");

}  // namespace netwit
