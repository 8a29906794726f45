#include "netwit/seesaw.hpp"

#include <cmath>
#include <cstdio>

#include "netwit/qlinalg.hpp"
#include "netwit/random.hpp"

namespace netwit {

namespace {

// --- dense multi-slot helpers (index arithmetic, no map allocation) --------

Matrix permute_dense(const Matrix& x, const std::vector<int>& dims,
                     const std::vector<int>& perm) {
  const int n = static_cast<int>(x.rows());
  std::vector<int> new_dims(dims.size());
  for (size_t s = 0; s < dims.size(); ++s) new_dims[perm[s]] = dims[s];
  std::vector<int> nd(dims.size());
  std::vector<int> rowmap(n);
  for (int r = 0; r < n; ++r) {
    const auto d = unpack_index(r, dims);
    for (size_t s = 0; s < dims.size(); ++s) nd[perm[s]] = d[s];
    rowmap[r] = pack_index(nd, new_dims);
  }
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(rowmap[r], rowmap[c]) = x(r, c);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Channel with Choi J : (din, dout) applied to the leading din-dimensional
// slot of X (`rest` = product of the remaining dims):
//   Y[(o,r),(o',r')] = sum_{i,i'} J[(i,o),(i',o')] X[(i,r),(i',r')]
Matrix apply_choi_front(const Matrix& x, int din, int dout, int rest,
                        const Matrix& choi) {
  Matrix y = Matrix::Zero(dout * rest, dout * rest);
  for (int i = 0; i < din; ++i)
    for (int ip = 0; ip < din; ++ip)
      for (int o = 0; o < dout; ++o)
        for (int op = 0; op < dout; ++op) {
          const Complex j = choi(i * dout + o, ip * dout + op);
          if (j == Complex(0, 0)) continue;
          y.block(o * rest, op * rest, rest, rest) +=
              j * x.block(i * rest, ip * rest, rest, rest);
        }
  return y;
}

// Adjoint on the leading slot: tr[apply(X) Z] = tr[X adjoint(Z)]:
//   K[(i',r'),(i,r)] = sum_{o,o'} J[(i,o),(i',o')] Z[(o',r'),(o,r)]
Matrix adjoint_choi_front(const Matrix& z, int din, int dout, int rest,
                          const Matrix& choi) {
  Matrix k = Matrix::Zero(din * rest, din * rest);
  for (int i = 0; i < din; ++i)
    for (int ip = 0; ip < din; ++ip)
      for (int o = 0; o < dout; ++o)
        for (int op = 0; op < dout; ++op) {
          const Complex j = choi(i * dout + o, ip * dout + op);
          if (j == Complex(0, 0)) continue;
          k.block(ip * rest, i * rest, rest, rest) +=
              j * z.block(op * rest, o * rest, rest, rest);
        }
  return k;
}

// Effective operator on the complementary slots: with Y fixed on the sorted
// slot list ys, M satisfies tr[(X at xs, Y at ys) K] = tr[X M].
Matrix contract_against(const Matrix& k, const std::vector<int>& dims,
                        const Matrix& y, const std::vector<int>& ys) {
  std::vector<int> xs;
  {
    std::vector<bool> in_y(dims.size(), false);
    for (int s : ys) in_y[s] = true;
    for (size_t s = 0; s < dims.size(); ++s)
      if (!in_y[s]) xs.push_back(static_cast<int>(s));
  }
  std::vector<int> xd, yd;
  for (int s : xs) xd.push_back(dims[s]);
  for (int s : ys) yd.push_back(dims[s]);
  const int nx = total_dim(xd), ny = total_dim(yd);

  std::vector<int> digits(dims.size());
  std::vector<int> full(static_cast<size_t>(nx) * ny);
  for (int xi = 0; xi < nx; ++xi) {
    const auto dx = unpack_index(xi, xd);
    for (size_t s = 0; s < xs.size(); ++s) digits[xs[s]] = dx[s];
    for (int yi = 0; yi < ny; ++yi) {
      const auto dy = unpack_index(yi, yd);
      for (size_t s = 0; s < ys.size(); ++s) digits[ys[s]] = dy[s];
      full[static_cast<size_t>(xi) * ny + yi] = pack_index(digits, dims);
    }
  }

  Matrix m = Matrix::Zero(nx, nx);
  for (int rx = 0; rx < nx; ++rx)
    for (int cx = 0; cx < nx; ++cx) {
      Complex acc = 0;
      for (int ry = 0; ry < ny; ++ry)
        for (int cy = 0; cy < ny; ++cy) {
          const Complex yv = y(ry, cy);
          if (yv == Complex(0, 0)) continue;
          acc += yv * k(full[static_cast<size_t>(cx) * ny + cy],
                        full[static_cast<size_t>(rx) * ny + ry]);
        }
      m(cx, rx) = acc;
    }
  return 0.5 * (m + m.adjoint().eval());
}

struct Slotted {
  Matrix m;
  std::vector<int> dims;
};

Slotted permute(Slotted x, const std::vector<int>& perm) {
  Slotted out;
  out.m = permute_dense(x.m, x.dims, perm);
  out.dims.resize(x.dims.size());
  for (size_t s = 0; s < x.dims.size(); ++s) out.dims[perm[s]] = x.dims[s];
  return out;
}

Slotted tensor_right(const Slotted& x, const Matrix& y,
                     const std::vector<int>& ydims) {
  Slotted out;
  out.m = kron(x.m, y);
  out.dims = x.dims;
  out.dims.insert(out.dims.end(), ydims.begin(), ydims.end());
  return out;
}

// Apply a party channel on the two leading hidden slots.
Slotted apply_party(Slotted x, const Matrix& choi, int h) {
  const int rest = static_cast<int>(x.m.rows()) / (h * h);
  Slotted out;
  out.m = apply_choi_front(x.m, h * h, 2, rest, choi);
  out.dims = {2};
  for (size_t s = 2; s < x.dims.size(); ++s) out.dims.push_back(x.dims[s]);
  return out;
}

// Triangle output of one branch, ordered (A, B, C).
Matrix assemble_branch(const NetworkBranch& br, int h) {
  Slotted x{kron(br.src_ab.matrix(), br.src_ca.matrix()), {h, h, h, h}};
  // (A',B'',C',A'') -> (A',A'',B'',C')
  x = permute(std::move(x), {0, 2, 3, 1});
  x = apply_party(std::move(x), br.choi[0], h);      // (A, B'', C')
  x = tensor_right(x, br.src_bc.matrix(), {h, h});   // + (B',C'')
  x = permute(std::move(x), {2, 1, 3, 0, 4});        // (B',B'',A,C',C'')
  x = apply_party(std::move(x), br.choi[1], h);      // (B, A, C', C'')
  x = permute(std::move(x), {2, 3, 0, 1});           // (C',C'',B,A)
  x = apply_party(std::move(x), br.choi[2], h);      // (C, B, A)
  x = permute(std::move(x), {2, 1, 0});              // (A, B, C)
  return x.m;
}

// Hexagon output of one branch, ordered (A3,B3,C3,A4,B4,C4). Each ring edge
// carries one copy of the matching source:
//   A3-B3: ab(1)   B3-C3: bc(1)   C3-A4: ca(1)
//   A4-B4: ab(2)   B4-C4: bc(2)   C4-A3: ca(2)
// where an A-node takes (A' of ab, A'' of ca), a B-node (B' of bc, B'' of
// ab) and a C-node (C' of ca, C'' of bc).
Matrix assemble_hexagon(const NetworkBranch& br, int h) {
  const Matrix& ab = br.src_ab.matrix();
  const Matrix& bc = br.src_bc.matrix();
  const Matrix& ca = br.src_ca.matrix();
  Slotted x{kron(ab, ca), {h, h, h, h}};             // (A3',B3'',C4',A3'')
  x = permute(std::move(x), {0, 2, 3, 1});           // (A3',A3'',B3'',C4')
  x = apply_party(std::move(x), br.choi[0], h);      // (A3, B3'', C4')
  x = tensor_right(x, bc, {h, h});                   // + (B3',C3'')
  x = permute(std::move(x), {2, 1, 3, 0, 4});        // (B3',B3'',A3,C4',C3'')
  x = apply_party(std::move(x), br.choi[1], h);      // (B3, A3, C4', C3'')
  x = tensor_right(x, ca, {h, h});                   // + (C3',A4'')
  x = permute(std::move(x), {2, 3, 4, 1, 0, 5});     // (C3',C3'',B3,A3,C4',A4'')
  x = apply_party(std::move(x), br.choi[2], h);      // (C3,B3,A3,C4',A4'')
  x = tensor_right(x, ab, {h, h});                   // + (A4',B4'')
  x = permute(std::move(x), {2, 3, 4, 5, 1, 0, 6});  // (A4',A4'',C3,B3,A3,C4',B4'')
  x = apply_party(std::move(x), br.choi[0], h);      // (A4,C3,B3,A3,C4',B4'')
  x = tensor_right(x, bc, {h, h});                   // + (B4',C4'')
  x = permute(std::move(x), {2, 3, 4, 5, 6, 1, 0, 7});
  x = apply_party(std::move(x), br.choi[1], h);      // (B4,A4,C3,B3,A3,C4',C4'')
  x = permute(std::move(x), {2, 3, 4, 5, 6, 0, 1});  // (C4',C4'',B4,A4,C3,B3,A3)
  x = apply_party(std::move(x), br.choi[2], h);      // (C4,B4,A4,C3,B3,A3)
  x = permute(std::move(x), {5, 4, 3, 2, 1, 0});     // (A3,B3,C3,A4,B4,C4)
  return x.m;
}

constexpr double kTinyWeight = 1e-14;

}  // namespace

void NetworkModel::validate(double cptp_tol) const {
  if (hidden_dim < 2) throw std::domain_error("hidden_dim must be >= 2");
  if (branches.empty()) throw std::domain_error("model has no branches");
  if (weights.size() != branches.size())
    throw std::domain_error("weights/branches size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw std::domain_error("negative branch weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::domain_error("branch weights do not sum to 1");
  const int h = hidden_dim;
  const std::vector<int> sdims{h, h};
  for (const auto& br : branches) {
    for (const auto* src : {&br.src_ab, &br.src_bc, &br.src_ca})
      if (src->dims() != sdims)
        throw std::domain_error("source dimensions do not match hidden_dim");
    for (const auto& j : br.choi) {
      if (j.rows() != 2 * h * h || j.cols() != 2 * h * h)
        throw std::domain_error("Choi matrix has wrong side");
      HermitianOperator cj({h * h, 2}, j, Tolerances{.herm = cptp_tol});
      if (min_eigenvalue(cj) < -cptp_tol)
        throw std::domain_error("Choi matrix is not PSD");
      auto tr_out = partial_trace(cj, SubsystemSelector{0});
      const double dev =
          (tr_out.matrix() - Matrix::Identity(h * h, h * h))
              .cwiseAbs()
              .maxCoeff();
      if (dev > 1e-7)
        throw std::domain_error("channel is not trace preserving (dev " +
                                std::to_string(dev) + ")");
    }
  }
}

DensityMatrix assemble_state(const NetworkModel& model) {
  model.validate();
  Matrix rho = Matrix::Zero(8, 8);
  for (size_t l = 0; l < model.branches.size(); ++l) {
    if (model.weights[l] < kTinyWeight) continue;
    rho += model.weights[l] *
           assemble_branch(model.branches[l], model.hidden_dim);
  }
  return DensityMatrix({2, 2, 2}, rho,
                       Tolerances{.herm = 1e-7, .trace = 1e-7, .psd = 1e-7});
}

Matrix choi_from_kraus(const std::vector<Matrix>& kraus, int d_in, int d_out) {
  Matrix j = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (const auto& k : kraus)
    for (int i = 0; i < d_in; ++i)
      for (int ip = 0; ip < d_in; ++ip)
        for (int o = 0; o < d_out; ++o)
          for (int op = 0; op < d_out; ++op)
            j(i * d_out + o, ip * d_out + op) +=
                k(o, i) * std::conj(k(op, ip));
  return j;
}

std::pair<DensityMatrix, DensityMatrix> inflation_certificate(
    const NetworkModel& model) {
  model.validate();
  Matrix tau = Matrix::Zero(64, 64);
  Matrix gam = Matrix::Zero(64, 64);
  for (size_t l = 0; l < model.branches.size(); ++l) {
    const double w = model.weights[l];
    if (w < kTinyWeight) continue;
    const Matrix rho = assemble_branch(model.branches[l], model.hidden_dim);
    tau += w * kron(rho, rho);
    gam += w * assemble_hexagon(model.branches[l], model.hidden_dim);
  }
  const Tolerances tol{.herm = 1e-7, .trace = 1e-7, .psd = 1e-7};
  return {DensityMatrix({2, 2, 2, 2, 2, 2}, tau, tol),
          DensityMatrix({2, 2, 2, 2, 2, 2}, gam, tol)};
}

namespace {

NetworkModel random_model(Rng& rng, int h, int branches, bool random_weights) {
  NetworkModel m;
  m.hidden_dim = h;
  const int env = h * h;
  for (int b = 0; b < branches; ++b) {
    NetworkBranch br{DensityMatrix::from_pure({h, h}, rng.haar_vector(h * h)),
                     DensityMatrix::from_pure({h, h}, rng.haar_vector(h * h)),
                     DensityMatrix::from_pure({h, h}, rng.haar_vector(h * h)),
                     {}};
    for (int party = 0; party < 3; ++party) {
      const Matrix v = rng.haar_isometry(2 * env, h * h);
      std::vector<Matrix> kraus;
      for (int e = 0; e < env; ++e) {
        Matrix k(2, h * h);
        for (int o = 0; o < 2; ++o) k.row(o) = v.row(o * env + e);
        kraus.push_back(std::move(k));
      }
      br.choi[party] = choi_from_kraus(kraus, h * h, 2);
    }
    m.branches.push_back(std::move(br));
  }
  m.weights.assign(branches, 1.0 / branches);
  if (random_weights) {
    double sum = 0.0;
    for (auto& w : m.weights)
      sum += (w = -std::log(std::max(rng.uniform(), 1e-12)));
    for (auto& w : m.weights) w /= sum;
  }
  return m;
}

double branch_fidelity(const NetworkBranch& br, int h, const Matrix& T) {
  return (assemble_branch(br, h) * T).trace().real();
}

// Adjoint image of the target on the six hidden slots in party order
// (A',A'',B',B'',C',C'').
Matrix target_backmap(const NetworkBranch& br, int h, const Matrix& T) {
  const int hh = h * h;
  Matrix k = adjoint_choi_front(T, hh, 2, 4, br.choi[0]);  // (A_in, B, C)
  k = permute_dense(k, {hh, 2, 2}, {1, 0, 2});             // (B, A_in, C)
  k = adjoint_choi_front(k, hh, 2, hh * 2, br.choi[1]);    // (B_in, A_in, C)
  k = permute_dense(k, {hh, hh, 2}, {1, 2, 0});            // (C, B_in, A_in)
  k = adjoint_choi_front(k, hh, 2, hh * hh, br.choi[2]);   // (C_in, B_in, A_in)
  k = permute_dense(k, {hh, hh, hh}, {2, 1, 0});           // (A_in, B_in, C_in)
  return k;
}

DensityMatrix top_eigvec_state(const Matrix& m, const std::vector<int>& dims) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector v = es.eigenvectors().col(static_cast<int>(m.rows()) - 1);
  return DensityMatrix::from_pure(dims, v);
}

// sigma_tot in party order (A',A'',B',B'',C',C'') for the current sources.
Matrix sigma_party_order(const NetworkBranch& br, int h) {
  Slotted x{kron(kron(br.src_ab.matrix(), br.src_bc.matrix()),
                 br.src_ca.matrix()),
            {h, h, h, h, h, h}};
  // (A',B'',B',C'',C',A'') -> (A',A'',B',B'',C',C'')
  x = permute(std::move(x), {0, 3, 2, 5, 4, 1});
  return x.m;
}

// Choi-space effective operator: branch fidelity = tr[J_party N].
Matrix choi_effective(const NetworkBranch& br, int party, int h,
                      const Matrix& T) {
  const int hh = h * h;
  Slotted x{sigma_party_order(br, h), {h, h, h, h, h, h}};
  // Bring the two spectator parties' pairs to the front (in increasing party
  // order), apply their channels, then move this party's open pair first.
  static const std::vector<int> first_perm[3] = {
      {4, 5, 0, 1, 2, 3},   // A: (B',B'',C',C'',A',A'')
      {0, 1, 4, 5, 2, 3},   // B: (A',A'',C',C'',B',B'')
      {0, 1, 2, 3, 4, 5}};  // C: (A',A'',B',B'',C',C'')
  static const int spectators[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  x = permute(std::move(x), first_perm[party]);
  x = apply_party(std::move(x), br.choi[spectators[party][0]], h);
  x = permute(std::move(x), {2, 0, 1, 3, 4});  // (R',R'',Q,P',P'')
  x = apply_party(std::move(x), br.choi[spectators[party][1]], h);
  x = permute(std::move(x), {3, 2, 0, 1});     // (P',P'',Q,R)
  const Matrix& y = x.m;                       // dims (h,h,2,2)

  // Match the target ordering (P, Q, R).
  static const std::vector<int> t_perm[3] = {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}};
  const Matrix tp = permute_dense(T, {2, 2, 2}, t_perm[party]);

  //   N[(i',o'),(i,o)] = sum_{r,r'} Y[(i,r),(i',r')] T[(o',r'),(o,r)]
  Matrix n = Matrix::Zero(2 * hh, 2 * hh);
  for (int i = 0; i < hh; ++i)
    for (int ip = 0; ip < hh; ++ip)
      for (int o = 0; o < 2; ++o)
        for (int op = 0; op < 2; ++op) {
          Complex acc = 0;
          for (int r = 0; r < 4; ++r)
            for (int rp = 0; rp < 4; ++rp)
              acc += y(i * 4 + r, ip * 4 + rp) * tp(op * 4 + rp, o * 4 + r);
          n(ip * 2 + op, i * 2 + o) = acc;
        }
  return 0.5 * (n + n.adjoint().eval());
}

Matrix solve_choi_sdp(const Matrix& nhat, int h, SolverBackend& backend,
                      const Matrix& warm) {
  const int hh = h * h;
  const int side = 2 * hh;
  SdpProblem p;
  const int jb = p.add_block("choi", side);
  for (int i = 0; i < hh; ++i) {
    for (int ip = i; ip < hh; ++ip) {
      LinearExpr re, im;
      for (int o = 0; o < 2; ++o) {
        re.add_entry(jb, i * 2 + o, ip * 2 + o, 1.0);
        im.add_entry(jb, i * 2 + o, ip * 2 + o, Complex(0, -1));
      }
      p.add_eq(std::move(re), i == ip ? 1.0 : 0.0);
      if (i != ip) p.add_eq(std::move(im), 0.0);
    }
  }
  LinearExpr obj;
  obj.add_inner(jb, nhat);
  p.objective = obj.terms;
  p.sense = Sense::maximize;
  // Strictly feasible warm start: blend with the fully depolarizing channel.
  p.start_hint["choi"] =
      0.98 * warm + 0.02 * Matrix::Identity(side, side) / 2.0;

  SolveOptions opts;
  opts.gap_tol = 1e-10;
  opts.max_newton = 300;
  auto sol = backend.solve(p, opts);
  if (sol.status != SolveStatus::optimal &&
      sol.status != SolveStatus::near_optimal)
    throw std::runtime_error("channel update failed: " + sol.message);
  return sol.blocks[0];
}

}  // namespace

SeesawResult seesaw_maximize(const Vector& target, const SeesawConfig& cfg,
                             SolverBackend& backend) {
  if (target.size() != 8)
    throw std::invalid_argument("target must live on three qubits");
  if (std::abs(target.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("target vector must be normalized");
  if (cfg.hidden_dim < 2 || cfg.branches < 1 || cfg.restarts < 1 ||
      cfg.max_iters < 1 || cfg.improvement_tol <= 0)
    throw std::invalid_argument("invalid see-saw configuration");

  const Matrix T = target * target.adjoint();
  const int h = cfg.hidden_dim;
  const std::vector<int> dims6(6, h);

  SeesawResult best;
  best.fidelity = -1.0;
  int failures = 0;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    try {
      Rng rng(cfg.seed + 0x9e3779b97f4a7c15ULL *
                             (static_cast<uint64_t>(restart) + 1));
      NetworkModel model = random_model(rng, h, cfg.branches, false);
      std::vector<double> history;
      std::vector<double> f(model.branches.size(), 0.0);
      double prev = -1.0;

      for (int iter = 0; iter < cfg.max_iters; ++iter) {
        for (size_t l = 0; l < model.branches.size(); ++l) {
          auto& br = model.branches[l];
          // Sources: exact dominant-eigenvector updates against the
          // channel-adjoint image of the target.
          const Matrix K = target_backmap(br, h, T);
          {
            Slotted yo{kron(br.src_ca.matrix(), br.src_bc.matrix()),
                       {h, h, h, h}};
            yo = permute(std::move(yo), {2, 0, 1, 3});  // (A'',B',C',C'')
            const Matrix m =
                contract_against(K, dims6, yo.m, {1, 2, 4, 5});
            br.src_ab = top_eigvec_state(m, {h, h});
          }
          {
            Slotted yo{kron(br.src_ab.matrix(), br.src_ca.matrix()),
                       {h, h, h, h}};
            yo = permute(std::move(yo), {0, 2, 3, 1});  // (A',A'',B'',C')
            const Matrix m =
                contract_against(K, dims6, yo.m, {0, 1, 3, 4});
            br.src_bc = top_eigvec_state(m, {h, h});
          }
          {
            Slotted yo{kron(br.src_ab.matrix(), br.src_bc.matrix()),
                       {h, h, h, h}};
            yo = permute(std::move(yo), {0, 2, 1, 3});  // (A',B',B'',C'')
            const Matrix m =
                contract_against(K, dims6, yo.m, {0, 2, 3, 5});
            // m lives on sorted slots (A'', C'); sigma_ca is on (C', A'').
            auto proj = top_eigvec_state(m, {h, h});
            br.src_ca = permute_subsystems(proj, {1, 0});
          }
          // Channels: small CPTP-constrained SDPs.
          for (int party = 0; party < 3; ++party) {
            const Matrix n = choi_effective(br, party, h, T);
            br.choi[party] = solve_choi_sdp(n, h, backend, br.choi[party]);
          }
          f[l] = branch_fidelity(br, h, T);
        }
        // Weights: uniform over the set of best branches.
        const double top = *std::max_element(f.begin(), f.end());
        int nbest = 0;
        for (double v : f)
          if (v >= top - 1e-12) ++nbest;
        for (size_t l = 0; l < f.size(); ++l)
          model.weights[l] = (f[l] >= top - 1e-12) ? 1.0 / nbest : 0.0;

        double obj = 0.0;
        for (size_t l = 0; l < f.size(); ++l) obj += model.weights[l] * f[l];
        history.push_back(obj);
        if (obj - prev < cfg.improvement_tol && iter > 0) break;
        prev = obj;
      }

      const double objective = history.empty() ? -1.0 : history.back();
      if (objective > best.fidelity) {
        best.model = std::move(model);
        best.fidelity = objective;
        best.history = std::move(history);
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "[seesaw] restart %d failed: %s\n", restart,
                   e.what());
      ++failures;
    }
    ++best.restarts_done;
  }
  if (best.fidelity < 0.0)
    throw std::runtime_error("all see-saw restarts failed");

  // Report the independently recomputed fidelity of the assembled state.
  const double assembled =
      (assemble_state(best.model).matrix() * T).trace().real();
  if (std::abs(assembled - best.fidelity) > 1e-7)
    std::fprintf(stderr,
                 "[seesaw] objective/assembly mismatch: %.9f vs %.9f\n",
                 best.fidelity, assembled);
  best.fidelity = assembled;
  return best;
}

std::vector<NetworkModel> generate_sound_models(int n, const SeesawConfig& cfg,
                                                uint64_t seed) {
  std::vector<NetworkModel> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(i) + 1));
    out.push_back(random_model(rng, cfg.hidden_dim, cfg.branches, true));
  }
  return out;
}

std::vector<DensityMatrix> generate_sound_states(int n,
                                                 const SeesawConfig& cfg,
                                                 uint64_t seed) {
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (auto& m : generate_sound_models(n, cfg, seed))
    out.push_back(assemble_state(m));
  return out;
}

}  // namespace netwit
