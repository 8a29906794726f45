// Dense barrier interior-point method for the presolved LMI form produced by
// compile(): maximize c.y subject to G y = h and affine Hermitian blocks
// F_j(y) >= 0. Feasible-start path following; infeasibility is detected by a
// phase-I slack minimization.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "netwit/sdp.hpp"
#include "sdp_internal.hpp"

namespace netwit {

namespace {

using internal::Compiled;
using internal::CompiledBlock;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct BlockState {
  Matrix F;
  Matrix Finv;
  Eigen::LLT<Matrix> llt;
};

double block_logdet(const Eigen::LLT<Matrix>& llt) {
  double s = 0.0;
  const auto& L = llt.matrixLLT();
  for (int i = 0; i < L.rows(); ++i) s += std::log(L(i, i).real());
  return 2.0 * s;
}

void eval_block(const CompiledBlock& blk, const VectorXd& y, Matrix& out) {
  out = blk.constant;
  for (const auto& cs : blk.coords) {
    const double v = y(cs.k);
    for (const auto& s : cs.st) {
      if (s.row == s.col) {
        out(s.row, s.col) += v * s.w.real();
      } else {
        out(s.row, s.col) += v * s.w;
        out(s.col, s.row) += v * std::conj(s.w);
      }
    }
  }
}

// tr[A_k M] for the Hermitian stamp list of one coordinate.
double stamp_inner(const std::vector<internal::Stamp>& st, const Matrix& M) {
  double v = 0.0;
  for (const auto& s : st) {
    if (s.row == s.col)
      v += s.w.real() * M(s.row, s.row).real();
    else
      v += 2.0 * (s.w * M(s.col, s.row)).real();
  }
  return v;
}

struct DriverResult {
  bool ok = false;
  bool stopped_value = false;
  bool stopped_bound = false;
  std::string message;
  VectorXd y;
  double t_final = 1.0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  int steps = 0;
  VectorXd eq_dual;  // lambda / t at the final center
  std::vector<Matrix> Finv_over_t;
};

// Cholesky with Jacobi scaling and a ridge fallback.
class ScaledLLT {
 public:
  bool compute(MatrixXd& H) {
    const int n = static_cast<int>(H.rows());
    d_ = H.diagonal().cwiseMax(1e-300).cwiseSqrt();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) H(i, j) /= d_(i) * d_(j);
    double ridge = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      llt_.compute(H);
      if (llt_.info() == Eigen::Success) return true;
      ridge = (ridge == 0.0) ? 1e-13 : ridge * 100;
      H.diagonal().array() += ridge;
    }
    return false;
  }

  VectorXd solve(const VectorXd& b) const {
    return llt_.solve((b.array() / d_.array()).matrix()).array() / d_.array();
  }

  MatrixXd solve_mat(MatrixXd B) const {
    B.array().colwise() /= d_.array();
    MatrixXd X = llt_.solve(B);
    X.array().colwise() /= d_.array();
    return X;
  }

 private:
  Eigen::LLT<MatrixXd> llt_;
  VectorXd d_;
};

class BarrierDriver {
 public:
  BarrierDriver(const Compiled& cc, VectorXd c_int, int verbosity)
      : cc_(cc), c_(std::move(c_int)), verbosity_(verbosity) {
    p_ = cc.p;
    m_ = static_cast<int>(cc.G.rows());
    nu_ = 0.0;
    for (const auto& b : cc.blocks) nu_ += b.side;
    Gt_ = MatrixXd(cc_.G).transpose();
    states_.resize(cc.blocks.size());
  }

  // stop_value_int: stop once c.y >= v (value certified achievable).
  // stop_bound_int: stop once c.y + gap < v (optimum certified below v).
  DriverResult run(VectorXd y0, double gap_tol, int max_newton,
                   std::optional<double> stop_value_int,
                   std::optional<double> stop_bound_int) {
    DriverResult res;
    res.y = std::move(y0);
    const bool pure_feas = c_.norm() == 0.0;
    double t = 1.0;
    const double theta = 8.0;
    int steps = 0;

    VectorXd y_ckpt = res.y;  // last successfully centered iterate
    double t_ckpt = 0.0;

    while (true) {
      // Loose centering is enough while following the path; the final stage
      // below re-centers tightly for clean duals.
      bool stage_ok = true;
      double dec_prev = std::numeric_limits<double>::infinity();
      for (int it = 0; it < 40; ++it) {
        if (steps >= max_newton) {
          res.message = "newton step limit reached";
          stage_ok = false;
          break;
        }
        double dec2 = 0.0;
        if (!newton_step(res.y, t, dec2)) {
          res.message = newton_error_;
          stage_ok = false;
          break;
        }
        ++steps;
        if (dec2 < 1e-6) break;
        if (dec2 > 0.7 * dec_prev && dec2 < 1e-2) break;  // stalled but close
        if (dec2 > dec_prev && it > 5) {
          stage_ok = dec2 < 1.0;  // diverging far from the path
          break;
        }
        dec_prev = dec2;
      }
      if (!stage_ok) {
        // Fall back to the last good center; report its looser gap honestly.
        if (t_ckpt > 0.0) {
          res.y = y_ckpt;
          finalize(res, t_ckpt, steps);
          res.ok = true;
          if (res.message.empty()) res.message = "stopped early";
        } else {
          res.steps = steps;
        }
        return res;
      }
      y_ckpt = res.y;
      t_ckpt = t;

      const double gap = nu_ / t;
      if (verbosity_ > 0)
        std::fprintf(stderr, "[ipm] t=%.3e obj=%.9f gap=%.2e steps=%d\n", t,
                     c_.dot(res.y), gap, steps);
      if (stop_value_int && c_.dot(res.y) >= *stop_value_int) {
        res.stopped_value = true;
        finalize(res, t, steps);
        res.ok = true;
        return res;
      }
      if (stop_bound_int && c_.dot(res.y) + gap < *stop_bound_int) {
        res.stopped_bound = true;
        finalize(res, t, steps);
        res.ok = true;
        return res;
      }
      if (pure_feas || gap <= gap_tol) {
        for (int it = 0; it < 12 && steps < max_newton; ++it) {
          double dec2 = 0.0;
          VectorXd y_save = res.y;
          if (!newton_step(res.y, t, dec2)) {
            res.y = y_save;
            break;
          }
          ++steps;
          if (dec2 < 1e-11) break;
        }
        finalize(res, t, steps);
        res.ok = true;
        return res;
      }
      t *= theta;
    }
  }

  bool blocks_pd(const VectorXd& y) {
    Matrix F;
    for (const auto& blk : cc_.blocks) {
      eval_block(blk, y, F);
      Eigen::LLT<Matrix> llt(F);
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  }

 private:
  void finalize(DriverResult& res, double t, int steps) {
    res.t_final = t;
    res.gap = nu_ / t;
    res.steps = steps;
    res.Finv_over_t.clear();
    Matrix F;
    for (const auto& blk : cc_.blocks) {
      eval_block(blk, res.y, F);
      Eigen::LLT<Matrix> llt(F);
      Matrix inv = llt.solve(Matrix::Identity(blk.side, blk.side));
      res.Finv_over_t.push_back(inv / t);
    }
    res.eq_dual = m_ > 0 ? VectorXd(last_lambda_ / t) : VectorXd();
  }

  bool newton_step(VectorXd& y, double t, double& dec2) {
    const int nb = static_cast<int>(cc_.blocks.size());
    double logdet = 0.0;
    for (int j = 0; j < nb; ++j) {
      auto& st = states_[j];
      eval_block(cc_.blocks[j], y, st.F);
      st.llt.compute(st.F);
      if (st.llt.info() != Eigen::Success) {
        newton_error_ = "iterate left the cone";
        return false;
      }
      logdet += block_logdet(st.llt);
      st.Finv = st.llt.solve(Matrix::Identity(st.F.rows(), st.F.cols()));
    }

    if (H_.rows() != p_) H_.resize(p_, p_);
    H_.setZero();
    VectorXd g = t * c_;

    Matrix W;
    for (int j = 0; j < nb; ++j) {
      const auto& blk = cc_.blocks[j];
      const auto& Finv = states_[j].Finv;
      const int nc = static_cast<int>(blk.coords.size());
      W.resize(blk.side, blk.side);
      for (int a = 0; a < nc; ++a) {
        const auto& ca = blk.coords[a];
        g(ca.k) += stamp_inner(ca.st, Finv);
        W.setZero();
        for (const auto& s : ca.st) {
          if (s.row == s.col) {
            W.noalias() +=
                (s.w.real() * Finv.col(s.row)) * Finv.col(s.row).adjoint();
          } else {
            W.noalias() +=
                (s.w * Finv.col(s.row)) * Finv.col(s.col).adjoint();
            W.noalias() +=
                (std::conj(s.w) * Finv.col(s.col)) * Finv.col(s.row).adjoint();
          }
        }
        for (int b = a; b < nc; ++b) {
          const auto& cb = blk.coords[b];
          H_(ca.k, cb.k) += stamp_inner(cb.st, W);
        }
      }
    }
    H_ = H_.selfadjointView<Eigen::Upper>();

    // Keep a copy for residual computations; the factorization scales H_
    // in place.
    Hcopy_ = H_;
    ScaledLLT Hf;
    if (!Hf.compute(H_)) {
      newton_error_ = "hessian factorization failed";
      return false;
    }

    VectorXd dy;
    VectorXd lambda = VectorXd::Zero(m_);
    if (m_ > 0) {
      const MatrixXd X2 = Hf.solve_mat(Gt_);
      MatrixXd S = cc_.G * X2;
      const VectorXd r2 = cc_.h - cc_.G * y;
      ScaledLLT Sf;
      if (!Sf.compute(S)) {
        newton_error_ = "kkt factorization failed";
        return false;
      }
      // Solve [H G'; G 0][dy; lambda] = [g; r2], then refine the pair
      // against the unscaled system once or twice.
      dy = VectorXd::Zero(p_);
      for (int pass = 0; pass < 3; ++pass) {
        const VectorXd rH = g - Hcopy_ * dy - Gt_ * lambda;
        const VectorXd rG = r2 - cc_.G * dy;
        const VectorXd u = Hf.solve(rH);
        const VectorXd dlam = Sf.solve(cc_.G * u - rG);
        dy += u - X2 * dlam;
        lambda += dlam;
      }
    } else {
      const VectorXd X1 = Hf.solve(g);
      dy = X1 + Hf.solve(g - Hcopy_ * X1);
    }
    last_lambda_ = lambda;
    dec2 = std::abs(dy.dot(g - Gt_ * lambda));

    const double phi0 = t * c_.dot(y) + logdet;
    const double slope = g.dot(dy);
    double alpha = std::min(1.0, 1.8 * last_alpha_);
    Matrix F;
    for (int bt = 0; bt < 80; ++bt) {
      const VectorXd trial = y + alpha * dy;
      bool pd = true;
      double ld = 0.0;
      for (int j = 0; j < nb && pd; ++j) {
        eval_block(cc_.blocks[j], trial, F);
        Eigen::LLT<Matrix> llt(F);
        if (llt.info() != Eigen::Success)
          pd = false;
        else
          ld += block_logdet(llt);
      }
      if (pd) {
        const double phi = t * c_.dot(trial) + ld;
        if (phi >= phi0 + 0.01 * alpha * slope || alpha < 1e-10) {
          y = trial;
          last_alpha_ = alpha;
          return true;
        }
      }
      alpha *= 0.6;
    }
    newton_error_ = "line search failed";
    return false;
  }

  const Compiled& cc_;
  VectorXd c_;
  int verbosity_;
  int p_ = 0, m_ = 0;
  double nu_ = 0.0;
  double last_alpha_ = 1.0;
  MatrixXd Gt_;
  MatrixXd H_;
  MatrixXd Hcopy_;
  VectorXd last_lambda_;
  std::vector<BlockState> states_;
  std::string newton_error_;
};

// Phase-I augmentation: extra coordinate s stamped as identity on every block.
Compiled augment_phase1(const Compiled& cc) {
  Compiled aug = cc;
  aug.p = cc.p + 1;
  for (auto& blk : aug.blocks) {
    internal::CoordStamps cs;
    cs.k = cc.p;
    for (int r = 0; r < blk.side; ++r)
      cs.st.push_back({r, r, Complex(1.0, 0.0)});
    blk.coords.push_back(std::move(cs));
  }
  aug.G.conservativeResize(cc.G.rows(), cc.p + 1);
  aug.c = VectorXd::Zero(cc.p + 1);
  return aug;
}

class IpmBackend final : public SolverBackend {
 public:
  std::string name() const override { return "ipm"; }

  SdpSolution solve(const SdpProblem& problem,
                    const SolveOptions& opts) override {
    const auto t0 = std::chrono::steady_clock::now();
    SdpSolution sol;
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           t0)
          .count();
    };

    Compiled cc;
    try {
      cc = internal::compile(problem);
    } catch (const std::exception& e) {
      sol.status = SolveStatus::numerical_error;
      sol.message = std::string("compile failed: ") + e.what();
      return sol;
    }
    if (cc.inconsistent) {
      sol.status = SolveStatus::infeasible;
      sol.message = cc.note;
      sol.stats.runtime_sec = elapsed();
      return sol;
    }

    const double sgn = (cc.sense == Sense::maximize) ? 1.0 : -1.0;
    const VectorXd c_int = sgn * cc.c;
    BarrierDriver driver(cc, c_int, opts.verbosity);

    VectorXd y0;
    bool have_start = false;
    const int m = static_cast<int>(cc.G.rows());
    if (cc.has_hint) {
      const double resid =
          m > 0 ? (cc.G * cc.y_hint - cc.h).cwiseAbs().maxCoeff() : 0.0;
      if (resid < 1e-8 && driver.blocks_pd(cc.y_hint)) {
        y0 = cc.y_hint;
        have_start = true;
      }
    }
    if (!have_start) {
      VectorXd y_ls = VectorXd::Zero(cc.p);
      if (m > 0) {
        MatrixXd Gd(cc.G);
        MatrixXd S0 = Gd * Gd.transpose();
        Eigen::LDLT<MatrixXd> Sf(S0);
        const VectorXd lam = Sf.solve(cc.h);
        y_ls = Gd.transpose() * lam;
        const double resid = (cc.G * y_ls - cc.h).cwiseAbs().maxCoeff();
        if (resid > 1e-7 * (1.0 + cc.h.cwiseAbs().maxCoeff())) {
          sol.status = SolveStatus::infeasible;
          sol.message = "equality constraints are inconsistent";
          sol.stats.runtime_sec = elapsed();
          return sol;
        }
      }
      if (driver.blocks_pd(y_ls)) {
        y0 = y_ls;
        have_start = true;
      } else {
        Compiled aug = augment_phase1(cc);
        double s0 = 0.0;
        {
          Matrix F;
          for (const auto& blk : cc.blocks) {
            eval_block(blk, y_ls, F);
            Eigen::SelfAdjointEigenSolver<Matrix> es(F,
                                                     Eigen::EigenvaluesOnly);
            s0 = std::max(s0, -es.eigenvalues().minCoeff());
          }
          s0 += 1.0;
        }
        VectorXd z0(cc.p + 1);
        z0.head(cc.p) = y_ls;
        z0(cc.p) = s0;
        VectorXd c_ph = VectorXd::Zero(cc.p + 1);
        c_ph(cc.p) = -1.0;  // maximize -s
        BarrierDriver ph(aug, c_ph, opts.verbosity);
        auto pres = ph.run(z0, 1e-10, opts.max_newton,
                           /*stop_value_int=*/1e-7,    // -s >= 1e-7
                           /*stop_bound_int=*/-1e-9);  // max(-s) < -1e-9
        sol.stats.newton_steps += pres.steps;
        if (pres.stopped_value) {
          y0 = pres.y.head(cc.p);
          have_start = true;
        } else if (pres.stopped_bound) {
          sol.status = SolveStatus::infeasible;
          sol.message = "no PSD-feasible point (phase-I certificate)";
          sol.stats.runtime_sec = elapsed();
          return sol;
        } else if (pres.ok) {
          sol.status = SolveStatus::numerical_error;
          sol.message = "feasible set has empty interior (phase-I limit)";
          sol.stats.runtime_sec = elapsed();
          return sol;
        } else {
          sol.status = SolveStatus::numerical_error;
          sol.message = "phase-I failed: " + pres.message;
          sol.stats.runtime_sec = elapsed();
          return sol;
        }
      }
    }

    // Early-exit thresholds mapped onto the internal maximize form via
    // ext = sgn * int + obj_const.
    std::optional<double> stop_value_int, stop_bound_int;
    if (opts.stop_value)
      stop_value_int = sgn * (*opts.stop_value - cc.obj_const);
    if (opts.stop_bound)
      stop_bound_int = sgn * (*opts.stop_bound - cc.obj_const);

    auto res = driver.run(y0, opts.gap_tol, opts.max_newton, stop_value_int,
                          stop_bound_int);
    sol.stats.newton_steps += res.steps;
    sol.stats.runtime_sec = elapsed();
    if (!res.ok) {
      sol.status = SolveStatus::numerical_error;
      sol.message = res.message;
      return sol;
    }

    sol.objective = sgn * c_int.dot(res.y) + cc.obj_const;
    sol.stats.duality_gap = res.gap;
    sol.blocks = internal::expand_blocks(cc, res.y);
    sol.block_duals = std::move(res.Finv_over_t);

    sol.eq_duals.assign(problem.eq_constraints.size(), 0.0);
    for (size_t j = 0; j < cc.row_origin.size(); ++j) {
      if (cc.row_origin[j] >= 0 &&
          static_cast<int>(j) < res.eq_dual.size())
        sol.eq_duals[cc.row_origin[j]] = res.eq_dual(static_cast<int>(j));
    }

    double max_resid = 0.0;
    size_t worst_row = 0;
    for (size_t i = 0; i < problem.eq_constraints.size(); ++i) {
      const auto& eq = problem.eq_constraints[i];
      double v = -eq.rhs;
      for (const auto& t : eq.terms) {
        const Complex x = sol.blocks[t.block](t.row, t.col);
        v += t.re_coeff * x.real() + t.im_coeff * x.imag();
      }
      if (std::abs(v) > max_resid) {
        max_resid = std::abs(v);
        worst_row = i;
      }
    }
    sol.stats.max_eq_residual = max_resid;
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& b : sol.blocks) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    sol.stats.min_block_eig = min_eig;

    if (max_resid > 1e-6) {
      // Rows dropped by the rank filter could not be satisfied: the original
      // system was inconsistent.
      sol.status = SolveStatus::infeasible;
      sol.message = "dependent equality constraints are inconsistent "
                    "(residual " +
                    std::to_string(max_resid) + " at row " +
                    std::to_string(worst_row) + ")";
      return sol;
    }

    if (res.stopped_value || res.stopped_bound) {
      sol.status = SolveStatus::near_optimal;
      sol.message = res.stopped_value ? "stopped at value threshold"
                                      : "stopped at bound threshold";
    } else if (res.gap <= opts.gap_tol * 1.0001 || c_int.norm() == 0.0) {
      sol.status = SolveStatus::optimal;
    } else {
      sol.status = SolveStatus::near_optimal;
      sol.message = res.message.empty() ? "loose duality gap" : res.message;
    }
    return sol;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
  if (name == "ipm" || name.empty()) return std::make_unique<IpmBackend>();
  throw std::invalid_argument("unknown solver backend: " + name);
}

}  // namespace netwit
