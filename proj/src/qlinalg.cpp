#include "netwit/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netwit {

void SubsystemSelector::validate(const std::vector<int>& dims) const {
  std::vector<bool> seen(dims.size(), false);
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(dims.size()))
      throw std::domain_error("subsystem index " + std::to_string(i) +
                              " out of range");
    if (seen[i])
      throw std::domain_error("duplicate subsystem index " + std::to_string(i));
    seen[i] = true;
  }
}

int total_dim(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) {
    if (d <= 0) throw std::domain_error("nonpositive local dimension");
    n *= d;
  }
  return n;
}

std::vector<int> unpack_index(int flat, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    digits[s] = flat % dims[s];
    flat /= dims[s];
  }
  return digits;
}

int pack_index(const std::vector<int>& digits, const std::vector<int>& dims) {
  int flat = 0;
  for (size_t s = 0; s < dims.size(); ++s) flat = flat * dims[s] + digits[s];
  return flat;
}

HermitianOperator::HermitianOperator(std::vector<int> dims, Matrix entries,
                                     const Tolerances& tol)
    : dims_(std::move(dims)), m_(std::move(entries)) {
  const int n = total_dim(dims_);
  if (m_.rows() != n || m_.cols() != n)
    throw std::domain_error("matrix side " + std::to_string(m_.rows()) +
                            " does not match dims product " +
                            std::to_string(n));
  const double herm_err = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > tol.herm)
    throw std::domain_error("matrix not Hermitian (deviation " +
                            std::to_string(herm_err) + ")");
  m_ = 0.5 * (m_ + m_.adjoint().eval());
}

DensityMatrix::DensityMatrix(std::vector<int> dims, Matrix entries,
                             const Tolerances& tol)
    : HermitianOperator(std::move(dims), std::move(entries), tol) {
  const double tr_err = std::abs(m_.trace().real() - 1.0) +
                        std::abs(m_.trace().imag());
  if (tr_err > tol.trace)
    throw std::domain_error("trace deviates from 1 by " +
                            std::to_string(tr_err));
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.psd)
    throw std::domain_error("matrix not PSD (min eigenvalue " +
                            std::to_string(min_eig) + ")");
}

DensityMatrix DensityMatrix::from_pure(const std::vector<int>& dims,
                                       const Vector& psi,
                                       const Tolerances& tol) {
  if (psi.size() != total_dim(dims))
    throw std::domain_error("state vector length does not match dims");
  if (std::abs(psi.norm() - 1.0) > tol.norm)
    throw std::domain_error("state vector not normalized");
  return DensityMatrix(dims, psi * psi.adjoint(), tol);
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

HermitianOperator tensor(const HermitianOperator& a,
                         const HermitianOperator& b) {
  return HermitianOperator(concat(a.dims(), b.dims()),
                           kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(concat(a.dims(), b.dims()),
                       kron(a.matrix(), b.matrix()),
                       Tolerances{.herm = 1e-8, .trace = 1e-8});
}

Matrix EntryMap::apply(const Matrix& in) const {
  if (in.rows() != in_side || in.cols() != in_side)
    throw std::domain_error("EntryMap input side mismatch");
  Matrix out = Matrix::Zero(out_side, out_side);
  for (int e = 0; e < out_side * out_side; ++e) {
    Complex v = 0;
    for (int f : terms[e]) v += in(f / in_side, f % in_side);
    out(e / out_side, e % out_side) = v;
  }
  return out;
}

EntryMap ptrace_entry_map(const std::vector<int>& dims,
                          const SubsystemSelector& keep) {
  keep.validate(dims);
  const int n = total_dim(dims);
  std::vector<int> traced;
  {
    std::vector<bool> kept(dims.size(), false);
    for (int i : keep.indices) kept[i] = true;
    for (size_t s = 0; s < dims.size(); ++s)
      if (!kept[s]) traced.push_back(static_cast<int>(s));
  }
  // Kept subsystems stay in their original relative order.
  std::vector<int> kept_sorted = keep.indices;
  std::sort(kept_sorted.begin(), kept_sorted.end());

  std::vector<int> out_dims, tr_dims;
  for (int s : kept_sorted) out_dims.push_back(dims[s]);
  for (int s : traced) tr_dims.push_back(dims[s]);
  const int n_out = total_dim(out_dims);
  const int n_tr = total_dim(tr_dims);

  EntryMap map;
  map.in_side = n;
  map.out_side = n_out;
  map.terms.assign(static_cast<size_t>(n_out) * n_out, {});
  std::vector<int> digits(dims.size());
  for (int r = 0; r < n_out; ++r) {
    const auto rd = unpack_index(r, out_dims);
    for (int c = 0; c < n_out; ++c) {
      const auto cd = unpack_index(c, out_dims);
      auto& lst = map.terms[static_cast<size_t>(r) * n_out + c];
      lst.reserve(n_tr);
      for (int k = 0; k < n_tr; ++k) {
        const auto kd = unpack_index(k, tr_dims);
        for (size_t i = 0; i < kept_sorted.size(); ++i)
          digits[kept_sorted[i]] = rd[i];
        for (size_t i = 0; i < traced.size(); ++i) digits[traced[i]] = kd[i];
        const int row = pack_index(digits, dims);
        for (size_t i = 0; i < kept_sorted.size(); ++i)
          digits[kept_sorted[i]] = cd[i];
        const int col = pack_index(digits, dims);
        lst.push_back(row * n + col);
      }
    }
  }
  return map;
}

EntryMap ptranspose_entry_map(const std::vector<int>& dims,
                              const SubsystemSelector& part) {
  part.validate(dims);
  const int n = total_dim(dims);
  std::vector<bool> flip(dims.size(), false);
  for (int i : part.indices) flip[i] = true;

  EntryMap map;
  map.in_side = n;
  map.out_side = n;
  map.terms.assign(static_cast<size_t>(n) * n, {});
  for (int r = 0; r < n; ++r) {
    auto rd = unpack_index(r, dims);
    for (int c = 0; c < n; ++c) {
      auto cd = unpack_index(c, dims);
      auto rs = rd, cs = cd;
      for (size_t s = 0; s < dims.size(); ++s)
        if (flip[s]) std::swap(rs[s], cs[s]);
      const int row = pack_index(rs, dims);
      const int col = pack_index(cs, dims);
      map.terms[static_cast<size_t>(row) * n + col] = {r * n + c};
    }
  }
  return map;
}

EntryMap permute_entry_map(const std::vector<int>& dims,
                           const std::vector<int>& perm) {
  if (perm.size() != dims.size())
    throw std::domain_error("permutation length mismatch");
  std::vector<bool> hit(dims.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(dims.size()) || hit[p])
      throw std::domain_error("not a permutation of subsystem positions");
    hit[p] = true;
  }
  std::vector<int> new_dims(dims.size());
  for (size_t s = 0; s < dims.size(); ++s) new_dims[perm[s]] = dims[s];
  const int n = total_dim(dims);

  EntryMap map;
  map.in_side = n;
  map.out_side = n;
  map.terms.assign(static_cast<size_t>(n) * n, {});
  std::vector<int> rd2(dims.size()), cd2(dims.size());
  for (int r = 0; r < n; ++r) {
    const auto rd = unpack_index(r, dims);
    for (int c = 0; c < n; ++c) {
      const auto cd = unpack_index(c, dims);
      for (size_t s = 0; s < dims.size(); ++s) {
        rd2[perm[s]] = rd[s];
        cd2[perm[s]] = cd[s];
      }
      const int row = pack_index(rd2, new_dims);
      const int col = pack_index(cd2, new_dims);
      map.terms[static_cast<size_t>(row) * n + col] = {r * n + c};
    }
  }
  return map;
}

EntryMap compose(const EntryMap& second, const EntryMap& first) {
  if (second.in_side != first.out_side)
    throw std::domain_error("EntryMap composition side mismatch");
  EntryMap map;
  map.in_side = first.in_side;
  map.out_side = second.out_side;
  map.terms.resize(second.terms.size());
  for (size_t e = 0; e < second.terms.size(); ++e)
    for (int mid : second.terms[e])
      for (int f : first.terms[mid]) map.terms[e].push_back(f);
  return map;
}

HermitianOperator partial_trace(const HermitianOperator& m,
                                const SubsystemSelector& keep) {
  const auto map = ptrace_entry_map(m.dims(), keep);
  std::vector<int> kept_sorted = keep.indices;
  std::sort(kept_sorted.begin(), kept_sorted.end());
  std::vector<int> out_dims;
  for (int s : kept_sorted) out_dims.push_back(m.dims()[s]);
  return HermitianOperator(out_dims, map.apply(m.matrix()),
                           Tolerances{.herm = 1e-7});
}

DensityMatrix partial_trace(const DensityMatrix& m,
                            const SubsystemSelector& keep) {
  auto h = partial_trace(static_cast<const HermitianOperator&>(m), keep);
  return DensityMatrix(h.dims(), h.matrix(),
                       Tolerances{.herm = 1e-7, .trace = 1e-7, .psd = 1e-7});
}

HermitianOperator partial_transpose(const HermitianOperator& m,
                                    const SubsystemSelector& part) {
  const auto map = ptranspose_entry_map(m.dims(), part);
  return HermitianOperator(m.dims(), map.apply(m.matrix()));
}

HermitianOperator permute_subsystems(const HermitianOperator& m,
                                     const std::vector<int>& perm) {
  const auto map = permute_entry_map(m.dims(), perm);
  std::vector<int> new_dims(m.dims().size());
  for (size_t s = 0; s < m.dims().size(); ++s)
    new_dims[perm[s]] = m.dims()[s];
  return HermitianOperator(new_dims, map.apply(m.matrix()));
}

DensityMatrix permute_subsystems(const DensityMatrix& m,
                                 const std::vector<int>& perm) {
  auto h = permute_subsystems(static_cast<const HermitianOperator&>(m), perm);
  return DensityMatrix(h.dims(), h.matrix(),
                       Tolerances{.herm = 1e-7, .trace = 1e-7, .psd = 1e-7});
}

double von_neumann_entropy(const DensityMatrix& m, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam < -tol.psd)
      throw std::domain_error("not a state: eigenvalue " + std::to_string(lam));
    if (lam < 1e-15) continue;  // 0 log 0 := 0
    h -= lam * std::log2(lam);
  }
  return h;
}

double fidelity_with_pure(const DensityMatrix& m, const Vector& psi,
                          const Tolerances& tol) {
  if (psi.size() != m.side())
    throw std::domain_error("state vector dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > tol.norm)
    throw std::domain_error("state vector not normalized");
  const double f = (psi.adjoint() * m.matrix() * psi)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double min_eigenvalue(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace netwit
