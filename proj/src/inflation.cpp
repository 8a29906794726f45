#include "netwit/inflation.hpp"

#include <cmath>

#include "ring_common.hpp"

namespace netwit::ring {

namespace {

// Marginal of `dims` onto `slots` with the kept subsystems arranged in the
// order given (not the sorted order partial_trace alone would produce).
EntryMap marginal_in_order(const std::vector<int>& dims,
                           const std::vector<int>& slots) {
  std::vector<int> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  auto tr = ptrace_entry_map(dims, SubsystemSelector{sorted});
  std::vector<int> kept_dims;
  for (int s : sorted) kept_dims.push_back(dims[s]);
  std::vector<int> perm(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    const auto it = std::find(slots.begin(), slots.end(), sorted[i]);
    perm[i] = static_cast<int>(it - slots.begin());
  }
  return compose(permute_entry_map(kept_dims, perm), tr);
}

EntryMap marginal_then_pt(const std::vector<int>& dims,
                          const std::vector<int>& keep, int pt_slot_in_kept) {
  auto tr = ptrace_entry_map(dims, SubsystemSelector{keep});
  std::vector<int> kept_dims(keep.size(), 2);
  return compose(
      ptranspose_entry_map(kept_dims, SubsystemSelector{pt_slot_in_kept}), tr);
}

}  // namespace

const Layout& Layout::get() {
  static const Layout layout = [] {
    Layout l;
    l.dims6 = {2, 2, 2, 2, 2, 2};
    l.tau_swap = permute_entry_map(l.dims6, {3, 4, 5, 0, 1, 2});
    l.gamma_swap = l.tau_swap;
    l.tau_marg_first = ptrace_entry_map(l.dims6, SubsystemSelector{0, 1, 2});
    l.tau_marg_second = ptrace_entry_map(l.dims6, SubsystemSelector{3, 4, 5});
    l.tau_pt = ptranspose_entry_map(l.dims6, SubsystemSelector{3, 4, 5});
    // gamma_(A3 B3 A4 B4) = tau_(A1 B1 A2 B2)
    l.ring_pairs[0] = {marginal_in_order(l.dims6, {0, 1, 3, 4}),
                       marginal_in_order(l.dims6, {0, 1, 3, 4})};
    // gamma_(B3 C3 B4 C4) = tau_(B1 C1 B2 C2)
    l.ring_pairs[1] = {marginal_in_order(l.dims6, {1, 2, 4, 5}),
                       marginal_in_order(l.dims6, {1, 2, 4, 5})};
    // gamma_(C3 A4 C4 A3) = tau_(C1 A1 C2 A2)
    l.ring_pairs[2] = {marginal_in_order(l.dims6, {2, 3, 5, 0}),
                       marginal_in_order(l.dims6, {2, 0, 5, 3})};
    // PPT of gamma marginals across (A3B3C3)/B4, (B3C3A4)/C4, (C3A4B4)/A3.
    l.gamma_ppt[0] = marginal_then_pt(l.dims6, {0, 1, 2, 4}, 3);
    l.gamma_ppt[1] = marginal_then_pt(l.dims6, {1, 2, 3, 5}, 3);
    l.gamma_ppt[2] = marginal_then_pt(l.dims6, {0, 2, 3, 4}, 0);
    return l;
  }();
  return layout;
}

namespace {

// Complex equality between entry sums of two blocks:
//   sum_{e in map_a(out)} A[e] - scale_b * sum_{e in map_b(out)} B[e] = rhs.
// Emitted for canonical (upper-triangle) output entries only.
void add_map_eq(SdpProblem& p, int block_a, const EntryMap& map_a, int out,
                int block_b, const EntryMap* map_b, double scale_b,
                Complex rhs) {
  const int side_a = map_a.out_side;
  const int r = out / side_a, c = out % side_a;
  if (r > c) return;
  LinearExpr re, im;
  for (int e : map_a.terms[out]) {
    re.add_entry(block_a, e / map_a.in_side, e % map_a.in_side, 1.0);
    im.add_entry(block_a, e / map_a.in_side, e % map_a.in_side,
                 Complex(0, -1));
  }
  if (map_b) {
    for (int e : map_b->terms[out]) {
      re.add_entry(block_b, e / map_b->in_side, e % map_b->in_side, -scale_b);
      im.add_entry(block_b, e / map_b->in_side, e % map_b->in_side,
                   Complex(0, scale_b));
    }
  }
  p.add_eq(std::move(re), rhs.real());
  if (r != c) p.add_eq(std::move(im), rhs.imag());
}

// target[e] = (map applied to source)[e] for every canonical entry.
void add_block_definition(SdpProblem& p, int target_block, int source_block,
                          const EntryMap& map) {
  const int n = map.out_side;
  EntryMap identity;
  identity.in_side = n;
  identity.out_side = n;
  identity.terms.resize(static_cast<size_t>(n) * n);
  for (int e = 0; e < n * n; ++e) identity.terms[e] = {e};
  for (int e = 0; e < n * n; ++e)
    add_map_eq(p, target_block, identity, e, source_block, &map, 1.0, 0.0);
}

EntryMap identity_map(int n) {
  EntryMap id;
  id.in_side = n;
  id.out_side = n;
  id.terms.resize(static_cast<size_t>(n) * n);
  for (int e = 0; e < n * n; ++e) id.terms[e] = {e};
  return id;
}

}  // namespace

SdpProblem build(const BuildSpec& spec) {
  const auto& L = Layout::get();
  SdpProblem p;
  const int tau = p.add_block("tau", 64);
  const int gamma = p.add_block("gamma", 64);
  const int tau_pt = p.add_block("tau_pt", 64);
  const int g1 = p.add_block("gamma_ppt_b4", 16);
  const int g2 = p.add_block("gamma_ppt_c4", 16);
  const int g3 = p.add_block("gamma_ppt_a3", 16);

  for (int b : {tau, gamma}) {
    LinearExpr tr;
    tr.add_trace(b, 64);
    p.add_eq(std::move(tr), 1.0);
  }

  // Swap symmetry of each six-partite state under exchanging its triangles.
  for (auto [block, map] : {std::pair{tau, &L.tau_swap},
                            std::pair{gamma, &L.gamma_swap}}) {
    for (int e = 0; e < 64 * 64; ++e) {
      const int src = map->terms[e][0];
      if (src == e) continue;
      const int r = e / 64, c = e % 64;
      if (r > c) continue;
      LinearExpr re, im;
      re.add_entry(block, r, c, 1.0);
      re.add_entry(block, src / 64, src % 64, -1.0);
      p.add_eq(std::move(re), 0.0);
      im.add_entry(block, r, c, Complex(0, -1));
      im.add_entry(block, src / 64, src % 64, Complex(0, 1));
      p.add_eq(std::move(im), 0.0);
    }
  }

  // Both triangle marginals of tau agree (redundant under the symmetry rows;
  // the presolve deduplicates).
  for (int e = 0; e < 64; ++e)
    add_map_eq(p, tau, L.tau_marg_first, e, tau, &L.tau_marg_second, 1.0, 0.0);

  // PPT blocks as explicit variables tied entrywise to their definitions.
  add_block_definition(p, tau_pt, tau, L.tau_pt);
  add_block_definition(p, g1, gamma, L.gamma_ppt[0]);
  add_block_definition(p, g2, gamma, L.gamma_ppt[1]);
  add_block_definition(p, g3, gamma, L.gamma_ppt[2]);

  // Hexagon-to-triangles marginal pairings.
  for (const auto& [gmap, tmap] : L.ring_pairs)
    for (int e = 0; e < 16 * 16; ++e)
      add_map_eq(p, gamma, gmap, e, tau, &tmap, 1.0, 0.0);

  const Matrix eye64 = Matrix::Identity(64, 64);
  p.start_hint["tau"] = eye64 / 64.0;
  p.start_hint["gamma"] = eye64 / 64.0;
  p.start_hint["tau_pt"] = eye64 / 64.0;
  p.start_hint["gamma_ppt_b4"] = Matrix::Identity(16, 16) / 16.0;
  p.start_hint["gamma_ppt_c4"] = Matrix::Identity(16, 16) / 16.0;
  p.start_hint["gamma_ppt_a3"] = Matrix::Identity(16, 16) / 16.0;

  switch (spec.mode) {
    case MargMode::free_rho: {
      const int rho = p.add_block("rho", 8);
      LinearExpr tr;
      tr.add_trace(rho, 8);
      p.add_eq(std::move(tr), 1.0);
      const EntryMap id8 = identity_map(8);
      for (int e = 0; e < 64; ++e)
        add_map_eq(p, rho, id8, e, tau, &L.tau_marg_first, 1.0, 0.0);
      const Vector& t = *spec.target;
      LinearExpr obj;
      obj.add_inner(rho, Matrix(t * t.adjoint()));
      p.objective = obj.terms;
      p.sense = Sense::maximize;
      p.start_hint["rho"] = Matrix::Identity(8, 8) / 8.0;
      break;
    }
    case MargMode::fixed: {
      const Matrix& r = *spec.rho;
      for (int e = 0; e < 64; ++e)
        add_map_eq(p, tau, L.tau_marg_first, e, 0, nullptr, 0.0,
                   r(e / 8, e % 8));
      p.sense = Sense::minimize;  // zero objective: pure feasibility
      // The identity hint violates the pinned marginal; let the backend find
      // its own start (least squares, then phase I if needed).
      p.start_hint.clear();
      break;
    }
    case MargMode::slack: {
      const Matrix& r = *spec.rho;
      const int slack = p.add_block("slack", 1);
      int counter = 0;
      // Two one-sided bounds per real parameter of the triangle marginal:
      //   bound = slack -+ (expr - rhs) >= 0.
      auto add_bound = [&](const LinearExpr& expr, double rhs) {
        for (double sign : {1.0, -1.0}) {
          const int b = p.add_block("bound_" + std::to_string(counter++), 1);
          LinearExpr row;
          row.add_entry(b, 0, 0, 1.0);
          row.add_entry(slack, 0, 0, -1.0);
          for (auto t : expr.terms) {
            t.re_coeff *= sign;
            t.im_coeff *= sign;
            row.terms.push_back(t);
          }
          p.add_eq(std::move(row), sign * rhs);
        }
      };
      for (int e = 0; e < 64; ++e) {
        const int rr = e / 8, cy = e % 8;
        if (rr > cy) continue;
        LinearExpr re, im;
        for (int f : L.tau_marg_first.terms[e]) {
          re.add_entry(tau, f / 64, f % 64, 1.0);
          im.add_entry(tau, f / 64, f % 64, Complex(0, -1));
        }
        add_bound(re, r(rr, cy).real());
        if (rr != cy) add_bound(im, r(rr, cy).imag());
      }
      LinearExpr obj;
      obj.add_entry(slack, 0, 0, 1.0);
      p.objective = obj.terms;
      p.sense = Sense::minimize;
      double t0 = 0.0;
      for (int e = 0; e < 64; ++e)
        t0 = std::max(t0, std::abs(r(e / 8, e % 8) -
                                   (e / 8 == e % 8 ? Complex(0.125) : 0.0)));
      Matrix s(1, 1);
      s(0, 0) = t0 + 0.25;
      p.start_hint["slack"] = s;
      break;
    }
    case MargMode::postselected: {
      const double ps = spec.postselect_p;
      const int rho_p = p.add_block("rho_p", 8);
      LinearExpr tr;
      tr.add_trace(rho_p, 8);
      p.add_eq(std::move(tr), 1.0);
      const EntryMap id8 = identity_map(8);
      if (ps >= 1.0) {
        // tau_marg - rho_p >= 0 with both traces one forces equality.
        for (int e = 0; e < 64; ++e)
          add_map_eq(p, rho_p, id8, e, tau, &L.tau_marg_first, 1.0, 0.0);
      } else {
        // gap = tau_marg - p * rho_p, constrained PSD.
        const int gap = p.add_block("post_gap", 8);
        for (int e = 0; e < 64; ++e) {
          const int rr = e / 8, cy = e % 8;
          if (rr > cy) continue;
          LinearExpr re, im;
          re.add_entry(gap, rr, cy, 1.0);
          im.add_entry(gap, rr, cy, Complex(0, -1));
          for (int f : L.tau_marg_first.terms[e]) {
            re.add_entry(tau, f / 64, f % 64, -1.0);
            im.add_entry(tau, f / 64, f % 64, Complex(0, 1));
          }
          re.add_entry(rho_p, rr, cy, ps);
          im.add_entry(rho_p, rr, cy, Complex(0, -ps));
          p.add_eq(std::move(re), 0.0);
          if (rr != cy) p.add_eq(std::move(im), 0.0);
        }
      }
      const Vector& t = *spec.target;
      LinearExpr obj;
      obj.add_inner(rho_p, Matrix(t * t.adjoint()));
      p.objective = obj.terms;
      p.sense = Sense::maximize;
      p.start_hint["rho_p"] = Matrix::Identity(8, 8) / 8.0;
      break;
    }
  }
  return p;
}

}  // namespace netwit::ring

namespace netwit {

double eval_constraint(const EqConstraint& eq,
                       const std::vector<Matrix>& blocks) {
  double v = -eq.rhs;
  for (const auto& t : eq.terms) {
    const Complex x = blocks[t.block](t.row, t.col);
    v += t.re_coeff * x.real() + t.im_coeff * x.imag();
  }
  return v;
}

SdpProblem build_ring_inflation(const std::optional<Vector>& target,
                                const std::optional<DensityMatrix>& fixed_rho) {
  if (target.has_value() == fixed_rho.has_value())
    throw std::invalid_argument(
        "exactly one of target / fixed_rho must be given");
  ring::BuildSpec spec;
  if (target) {
    if (target->size() != 8)
      throw std::invalid_argument("target must live on three qubits");
    if (std::abs(target->norm() - 1.0) > 1e-9)
      throw std::invalid_argument("target vector must be normalized");
    spec.mode = ring::MargMode::free_rho;
    spec.target = *target;
  } else {
    if (fixed_rho->dims() != std::vector<int>{2, 2, 2})
      throw std::invalid_argument("fixed state must live on (2,2,2)");
    spec.mode = ring::MargMode::fixed;
    spec.rho = fixed_rho->matrix();
  }
  return ring::build(spec);
}

namespace {

const Tolerances kCertTol{.herm = 1e-7, .trace = 1e-6, .psd = 1e-7,
                          .norm = 1e-9};

InflationCertificate package(const SdpProblem& problem, SdpSolution&& sol) {
  InflationCertificate cert;
  cert.objective_value = sol.objective;
  cert.solver_status = sol.status;
  cert.stats = sol.stats;
  cert.message = std::move(sol.message);
  if (sol.status == SolveStatus::optimal ||
      sol.status == SolveStatus::near_optimal) {
    const int ti = problem.block_index("tau");
    const int gi = problem.block_index("gamma");
    cert.tau = DensityMatrix({2, 2, 2, 2, 2, 2}, sol.blocks[ti], kCertTol);
    cert.gamma = DensityMatrix({2, 2, 2, 2, 2, 2}, sol.blocks[gi], kCertTol);
    const int ri = problem.block_index("rho");
    if (ri >= 0 && !sol.block_duals.empty())
      cert.rho_block_dual = sol.block_duals[ri];
  }
  return cert;
}

}  // namespace

InflationCertificate solve_ring_inflation(const SdpProblem& problem,
                                          SolverBackend& backend,
                                          const SolveOptions& opts) {
  auto sol = backend.solve(problem, opts);
  auto cert = package(problem, std::move(sol));
  cert.target_name = "custom";
  return cert;
}

CertifyResult certify_state(const DensityMatrix& rho, SolverBackend& backend,
                            double feas_tol) {
  if (rho.dims() != std::vector<int>{2, 2, 2})
    throw std::domain_error("certification expects a three-qubit state");
  ring::BuildSpec spec;
  spec.mode = ring::MargMode::slack;
  spec.rho = rho.matrix();
  const SdpProblem problem = ring::build(spec);

  SolveOptions opts;
  opts.gap_tol = 1e-7;
  opts.stop_value = 0.25 * feas_tol;  // slack this small: feasible
  opts.stop_bound = feas_tol;         // slack optimum certified above: not
  auto sol = backend.solve(problem, opts);

  CertifyResult out;
  out.slack = sol.objective;
  const double gap = sol.stats.duality_gap;
  out.certificate = package(problem, std::move(sol));
  out.certificate.target_name = "feasibility";
  if (out.certificate.solver_status == SolveStatus::numerical_error ||
      out.certificate.solver_status == SolveStatus::infeasible) {
    // Slack problems are structurally feasible; treat as a solver failure.
    out.certified_genuine = false;
    return out;
  }
  if (out.slack <= feas_tol * 0.5) {
    out.certified_genuine = false;
  } else if (out.slack - gap > feas_tol) {
    out.certified_genuine = true;
  } else {
    out.certified_genuine = out.slack > feas_tol;
  }
  return out;
}

HermitianOperator extract_dual_witness(const InflationCertificate& cert) {
  if (!cert.target.has_value())
    throw std::invalid_argument("dual witness needs a target-mode program");
  if (cert.solver_status != SolveStatus::optimal)
    throw std::invalid_argument("dual witness needs an optimal solve");
  if (!cert.rho_block_dual.has_value())
    throw std::runtime_error("backend did not provide dual information");
  const Vector& t = *cert.target;
  Matrix w = t * t.adjoint() + *cert.rho_block_dual;
  return HermitianOperator({2, 2, 2}, w, Tolerances{.herm = 1e-7});
}

CertificateCheck verify_certificate(const std::optional<DensityMatrix>& rho,
                                    const DensityMatrix& tau,
                                    const DensityMatrix& gamma, double tol) {
  const auto& L = ring::Layout::get();
  const Matrix& T = tau.matrix();
  const Matrix& G = gamma.matrix();
  CertificateCheck out;

  auto max_abs = [](const Matrix& m) { return m.cwiseAbs().maxCoeff(); };
  out.symmetry_residual = std::max(max_abs(T - L.tau_swap.apply(T)),
                                   max_abs(G - L.gamma_swap.apply(G)));

  const Matrix m1 = L.tau_marg_first.apply(T);
  const Matrix m2 = L.tau_marg_second.apply(T);
  out.triangle_residual = max_abs(m1 - m2);
  if (rho)
    out.triangle_residual =
        std::max(out.triangle_residual, max_abs(m1 - rho->matrix()));

  for (const auto& [gmap, tmap] : L.ring_pairs)
    out.ring_residual =
        std::max(out.ring_residual, max_abs(gmap.apply(G) - tmap.apply(T)));

  double min_eig = std::numeric_limits<double>::infinity();
  auto track = [&](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  };
  track(L.tau_pt.apply(T));
  for (const auto& map : L.gamma_ppt) track(map.apply(G));
  out.min_ppt_eig = min_eig;

  out.ok = out.symmetry_residual <= tol && out.triangle_residual <= tol &&
           out.ring_residual <= tol && out.min_ppt_eig >= -tol;
  return out;
}

}  // namespace netwit
