#pragma once

// Internal presolved form of an SdpProblem. The presolve is purely
// mechanical: it merges variables tied by two-term alias rows (entry
// symmetries, partial-transpose couplings), fixes single-term rows,
// substitutes variables that appear in exactly one remaining row (auxiliary
// block entries defined by linking rows), deduplicates rows and drops
// linearly dependent ones. The result is an LMI form over free parameters y:
//   blocks F_j(y) = C_j + sum_k y_k A_jk  must be PSD,  G y = h,
//   objective c . y + obj_const (internal sense: maximize).

#include <Eigen/Sparse>

#include "netwit/sdp.hpp"

namespace netwit::internal {

struct Stamp {
  int row = 0, col = 0;  // row <= col
  Complex w;             // F += y_k * (w e_r e_c^dag + conj(w) e_c e_r^dag);
                         // diagonal stamps use the real part only
};

struct CoordStamps {
  int k = -1;  // y index
  std::vector<Stamp> st;
};

struct CompiledBlock {
  int side = 0;
  Matrix constant;
  std::vector<CoordStamps> coords;  // sorted by k, one entry per coordinate
};

// Affine expression over live coordinates: value = cst + sum coeff_i * y_i.
struct AffineExpr {
  double cst = 0.0;
  std::vector<std::pair<int, double>> lin;
};

struct Compiled {
  bool inconsistent = false;   // contradictory equality constraints
  std::string note;

  int p = 0;                   // number of free parameters
  std::vector<CompiledBlock> blocks;
  Eigen::SparseMatrix<double, Eigen::RowMajor> G;  // rank-filtered rows
  Eigen::VectorXd h;
  std::vector<int> row_origin;  // original eq index per kept row

  Eigen::VectorXd c;           // objective over y, in the EXTERNAL sense
  double obj_const = 0.0;
  Sense sense = Sense::maximize;

  // Postsolve: value of every original Hermitian parameter as an affine
  // function of y. Parameter ids follow param_base/param order below.
  std::vector<AffineExpr> param_exprs;
  std::vector<int> param_base;  // per block, first parameter id

  // Starting point derived from the problem's hint (empty if unusable).
  Eigen::VectorXd y_hint;
  bool has_hint = false;
};

// Canonical Hermitian parameter layout for a block of side n:
// id = base + offset(r, c) (+1 for the imaginary part, r < c), where entries
// are enumerated row-major over the upper triangle.
int herm_param_count(int side);
int herm_param_offset(int side, int r, int c, bool imag);

Compiled compile(const SdpProblem& problem);

// Evaluate all original blocks from y.
std::vector<Matrix> expand_blocks(const Compiled& cc,
                                  const Eigen::VectorXd& y);

}  // namespace netwit::internal
