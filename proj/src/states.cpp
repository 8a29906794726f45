#include "netwit/states.hpp"

#include <cmath>

namespace netwit {

void JointDistribution::validate(const Tolerances& tol) const {
  if (probabilities.size() != static_cast<size_t>(total_dim(cardinalities)))
    throw std::domain_error("pmf length does not match outcome grid");
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < -tol.psd) throw std::domain_error("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.trace)
    throw std::domain_error("pmf sums to " + std::to_string(sum));
}

JointDistribution JointDistribution::marginal(
    const SubsystemSelector& vars) const {
  vars.validate(cardinalities);
  std::vector<int> kept = vars.indices;
  std::sort(kept.begin(), kept.end());
  std::vector<int> out_cards;
  for (int v : kept) out_cards.push_back(cardinalities[v]);
  JointDistribution out;
  out.cardinalities = out_cards;
  out.probabilities.assign(total_dim(out_cards), 0.0);
  const int n = static_cast<int>(probabilities.size());
  std::vector<int> od(kept.size());
  for (int i = 0; i < n; ++i) {
    const auto digits = unpack_index(i, cardinalities);
    for (size_t s = 0; s < kept.size(); ++s) od[s] = digits[kept[s]];
    out.probabilities[pack_index(od, out_cards)] += probabilities[i];
  }
  return out;
}

void ProductMeasurement::validate(const Tolerances& tol) const {
  for (const auto& povm : povms) {
    if (povm.empty()) throw std::domain_error("empty POVM");
    Matrix sum = Matrix::Zero(povm[0].side(), povm[0].side());
    for (const auto& e : povm) {
      if (e.side() != sum.rows())
        throw std::domain_error("POVM effects have mismatched sides");
      if (min_eigenvalue(e) < -tol.psd)
        throw std::domain_error("POVM effect not PSD");
      sum += e.matrix();
    }
    const double dev =
        (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-9)
      throw std::domain_error("POVM effects do not sum to identity (dev " +
                              std::to_string(dev) + ")");
  }
}

Vector ghz_vector(int d, int k) {
  if (d < 2 || k < 2) throw std::domain_error("GHZ requires d >= 2, k >= 2");
  std::vector<int> dims(k, d);
  const int n = total_dim(dims);
  Vector psi = Vector::Zero(n);
  for (int j = 0; j < d; ++j) {
    int idx = 0;
    for (int s = 0; s < k; ++s) idx = idx * d + j;
    psi(idx) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return psi;
}

DensityMatrix ghz_state(int d, int k) {
  std::vector<int> dims(k, d);
  return DensityMatrix::from_pure(dims, ghz_vector(d, k));
}

Vector w_vector() {
  Vector psi = Vector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  psi(0b001) = a;
  psi(0b010) = a;
  psi(0b100) = a;
  return psi;
}

DensityMatrix w_state() { return DensityMatrix::from_pure({2, 2, 2}, w_vector()); }

ProductMeasurement computational_measurement(const std::vector<int>& dims) {
  ProductMeasurement meas;
  for (int d : dims) {
    std::vector<HermitianOperator> povm;
    for (int i = 0; i < d; ++i) {
      Matrix e = Matrix::Zero(d, d);
      e(i, i) = 1.0;
      povm.emplace_back(std::vector<int>{d}, e);
    }
    meas.povms.push_back(std::move(povm));
  }
  return meas;
}

JointDistribution measure(const DensityMatrix& rho,
                          const ProductMeasurement& meas,
                          const Tolerances& tol) {
  if (meas.num_parties() != rho.num_subsystems())
    throw std::domain_error("measurement party count does not match state");
  for (int s = 0; s < rho.num_subsystems(); ++s)
    if (meas.povms[s][0].side() != rho.dims()[s])
      throw std::domain_error("POVM dimension mismatch at party " +
                              std::to_string(s));

  JointDistribution out;
  for (const auto& povm : meas.povms)
    out.cardinalities.push_back(static_cast<int>(povm.size()));
  const int n_out = total_dim(out.cardinalities);
  out.probabilities.resize(n_out);

  for (int o = 0; o < n_out; ++o) {
    const auto digits = unpack_index(o, out.cardinalities);
    Matrix effect = meas.povms[0][digits[0]].matrix();
    for (size_t s = 1; s < meas.povms.size(); ++s) {
      const Matrix& e = meas.povms[s][digits[s]].matrix();
      Matrix next(effect.rows() * e.rows(), effect.cols() * e.cols());
      for (int i = 0; i < effect.rows(); ++i)
        for (int j = 0; j < effect.cols(); ++j)
          next.block(i * e.rows(), j * e.cols(), e.rows(), e.cols()) =
              effect(i, j) * e;
      effect = std::move(next);
    }
    double p = (rho.matrix() * effect).trace().real();
    if (p < -tol.psd)
      throw std::domain_error("outcome probability " + std::to_string(p));
    out.probabilities[o] = std::max(p, 0.0);
  }
  double sum = 0.0;
  for (double p : out.probabilities) sum += p;
  for (double& p : out.probabilities) p /= sum;
  return out;
}

namespace {

double pmf_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double q : p) {
    if (q < 1e-15) continue;
    h -= q * std::log2(q);
  }
  return h;
}

}  // namespace

double shannon_entropy(const JointDistribution& p,
                       const SubsystemSelector& vars) {
  return pmf_entropy(p.marginal(vars).probabilities);
}

double mutual_information(const JointDistribution& p,
                          const SubsystemSelector& x,
                          const SubsystemSelector& y) {
  x.validate(p.cardinalities);
  y.validate(p.cardinalities);
  for (int a : x.indices)
    for (int b : y.indices)
      if (a == b) throw std::domain_error("overlapping variable selectors");
  SubsystemSelector xy;
  xy.indices = x.indices;
  xy.indices.insert(xy.indices.end(), y.indices.begin(), y.indices.end());
  return shannon_entropy(p, x) + shannon_entropy(p, y) -
         shannon_entropy(p, xy);
}

double coincidence_probability(const JointDistribution& p,
                               const SubsystemSelector& x,
                               const SubsystemSelector& y) {
  if (x.indices.size() != 1 || y.indices.size() != 1)
    throw std::domain_error("coincidence needs two single variables");
  const int a = x.indices[0], b = y.indices[0];
  SubsystemSelector both{std::vector<int>{a, b}};
  both.validate(p.cardinalities);
  if (p.cardinalities[a] != p.cardinalities[b])
    throw std::domain_error("coincidence needs equal cardinalities");
  const auto m = p.marginal(both);
  // marginal() sorts the kept variables; outcome order is (min, max) but the
  // diagonal is order-independent.
  double s = 0.0;
  const int d = p.cardinalities[a];
  for (int i = 0; i < d; ++i) s += m.probabilities[i * d + i];
  return s;
}

}  // namespace netwit
