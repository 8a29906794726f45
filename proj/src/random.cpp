#include "netwit/random.hpp"

#include <cmath>

namespace netwit {

double Rng::uniform() {
  // 53-bit mantissa resolution, deterministic across platforms.
  return (gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(uniform() * (hi - lo + 1));
}

uint64_t Rng::child_seed(uint64_t s) {
  // splitmix64 of (state-derived value, stream id)
  uint64_t z = gen_() + 0x9e3779b97f4a7c15ULL * (s + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector Rng::haar_vector(int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gaussian(), gaussian());
  v /= v.norm();
  return v;
}

Matrix Rng::haar_unitary(int dim) { return haar_isometry(dim, dim); }

Matrix Rng::haar_isometry(int d_out, int d_in) {
  Matrix g(d_out, d_in);
  for (int i = 0; i < d_out; ++i)
    for (int j = 0; j < d_in; ++j) g(i, j) = Complex(gaussian(), gaussian());
  // Gram-Schmidt with deterministic phase convention.
  for (int j = 0; j < d_in; ++j) {
    for (int k = 0; k < j; ++k)
      g.col(j) -= (g.col(k).adjoint() * g.col(j))(0, 0) * g.col(k);
    g.col(j) /= g.col(j).norm();
  }
  return g;
}

DensityMatrix Rng::random_state(const std::vector<int>& dims, int mixture) {
  const int n = total_dim(dims);
  Matrix m = Matrix::Zero(n, n);
  std::vector<double> w(mixture);
  double sum = 0.0;
  for (int i = 0; i < mixture; ++i) {
    w[i] = -std::log(std::max(uniform(), 1e-300));
    sum += w[i];
  }
  for (int i = 0; i < mixture; ++i) {
    const Vector psi = haar_vector(n);
    m += (w[i] / sum) * (psi * psi.adjoint());
  }
  return DensityMatrix(dims, m, Tolerances{.herm = 1e-8, .trace = 1e-8});
}

std::vector<HermitianOperator> Rng::random_povm(int dim, int outcomes) {
  // Effects E_i = M_i^dag M_i / normalization built from random matrices,
  // completed so that they sum to the identity.
  std::vector<Matrix> raw;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) a(r, c) = Complex(gaussian(), gaussian());
    Matrix e = a.adjoint() * a;
    raw.push_back(e);
    sum += e;
  }
  // Conjugate by sum^{-1/2} so the effects resolve the identity exactly.
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  Matrix isqrt = es.eigenvectors() *
                 es.eigenvalues().cwiseMax(1e-12).cwiseSqrt().cwiseInverse()
                     .asDiagonal() *
                 es.eigenvectors().adjoint();
  std::vector<HermitianOperator> povm;
  for (auto& e : raw)
    povm.emplace_back(std::vector<int>{dim}, (isqrt * e * isqrt).eval(),
                      Tolerances{.herm = 1e-7});
  return povm;
}

}  // namespace netwit
