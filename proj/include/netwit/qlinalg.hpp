#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical tolerances used when validating quantum objects.
struct Tolerances {
  double herm = 1e-9;   // Hermiticity, max |M - M^dag|
  double trace = 1e-9;  // |tr M - 1|
  double psd = 1e-8;    // eigenvalues >= -psd
  double norm = 1e-9;   // | ||psi|| - 1 |
};

/// Ordered list of distinct subsystem positions (0-based).
struct SubsystemSelector {
  std::vector<int> indices;

  SubsystemSelector() = default;
  SubsystemSelector(std::initializer_list<int> idx) : indices(idx) {}
  explicit SubsystemSelector(std::vector<int> idx) : indices(std::move(idx)) {}

  // Throws std::domain_error if out of range or duplicated.
  void validate(const std::vector<int>& dims) const;
};

// Composite-index helpers. Convention: leftmost subsystem is most
// significant in the row-major composite index.
int total_dim(const std::vector<int>& dims);
std::vector<int> unpack_index(int flat, const std::vector<int>& dims);
int pack_index(const std::vector<int>& digits, const std::vector<int>& dims);

/// Hermitian operator on a tensor product of finite-dimensional systems.
class HermitianOperator {
 public:
  HermitianOperator(std::vector<int> dims, Matrix entries,
                    const Tolerances& tol = {});

  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  int side() const { return static_cast<int>(m_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

 protected:
  std::vector<int> dims_;
  Matrix m_;
};

/// Trace-one Hermitian PSD operator: a quantum state.
class DensityMatrix : public HermitianOperator {
 public:
  DensityMatrix(std::vector<int> dims, Matrix entries,
                const Tolerances& tol = {});

  static DensityMatrix from_pure(const std::vector<int>& dims,
                                 const Vector& psi,
                                 const Tolerances& tol = {});
};

// Kronecker product; dims = concat(a.dims, b.dims).
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Reduced operator on the kept subsystems, original order preserved.
HermitianOperator partial_trace(const HermitianOperator& m,
                                const SubsystemSelector& keep);
DensityMatrix partial_trace(const DensityMatrix& m,
                            const SubsystemSelector& keep);

// Transpose on the selected tensor factors only.
HermitianOperator partial_transpose(const HermitianOperator& m,
                                    const SubsystemSelector& part);

// Conjugation by the permutation unitary: subsystem s moves to position
// perm[s]. perm must be a bijection on positions.
HermitianOperator permute_subsystems(const HermitianOperator& m,
                                     const std::vector<int>& perm);
DensityMatrix permute_subsystems(const DensityMatrix& m,
                                 const std::vector<int>& perm);

// -sum_i lambda_i log2 lambda_i; eigenvalues in [-tol.psd, 0) are clamped.
// Throws std::domain_error if an eigenvalue is below -tol.psd.
double von_neumann_entropy(const DensityMatrix& m, const Tolerances& tol = {});

// <psi| m |psi>, clamped to [0, 1]. psi must be normalized.
double fidelity_with_pure(const DensityMatrix& m, const Vector& psi,
                          const Tolerances& tol = {});

double min_eigenvalue(const HermitianOperator& m);

// ---------------------------------------------------------------------------
// Entry-level linear maps between Hermitian operators, used to generate SDP
// constraints with exactly the same index conventions as the numeric ops.
// Entries are addressed by the flat index r * side + c.
struct EntryMap {
  int in_side = 0;
  int out_side = 0;
  // terms[out_entry] lists the input entries that sum into it (coefficient 1).
  std::vector<std::vector<int>> terms;

  Matrix apply(const Matrix& in) const;
};

EntryMap ptrace_entry_map(const std::vector<int>& dims,
                          const SubsystemSelector& keep);
EntryMap ptranspose_entry_map(const std::vector<int>& dims,
                              const SubsystemSelector& part);
EntryMap permute_entry_map(const std::vector<int>& dims,
                           const std::vector<int>& perm);
// second(first(x)).
EntryMap compose(const EntryMap& second, const EntryMap& first);

}  // namespace netwit
