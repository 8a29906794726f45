#include "netwit/witness.hpp"

#include <cmath>

namespace netwit {

WitnessReport make_report(std::string name, double lhs, double rhs,
                          double tol) {
  WitnessReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.margin = lhs - rhs;
  r.violated = r.margin > tol;
  return r;
}

WitnessReport entropic_witness(const DensityMatrix& rho,
                               const ProductMeasurement& meas, double tol) {
  if (rho.num_subsystems() != 3)
    throw std::domain_error("entropic witness needs exactly 3 subsystems");
  const auto p = measure(rho, meas);
  const double lhs = mutual_information(p, {0}, {1}) +
                     mutual_information(p, {1}, {2}) -
                     shannon_entropy(p, {1});
  const double rhs = von_neumann_entropy(partial_trace(rho, {0})) +
                     von_neumann_entropy(rho) -
                     von_neumann_entropy(partial_trace(rho, {1, 2}));
  return make_report("entropic", lhs, rhs, tol);
}

WitnessReport entropic_witness_k(const DensityMatrix& rho,
                                 const ProductMeasurement& meas, double tol) {
  const int k = rho.num_subsystems();
  if (k < 3) throw std::domain_error("entropic witness needs k >= 3");
  const auto p = measure(rho, meas);
  double lhs = 0.0;
  for (int i = 0; i + 1 < k; ++i) lhs += mutual_information(p, {i}, {i + 1});
  for (int i = 1; i + 1 < k; ++i) lhs -= shannon_entropy(p, {i});

  SubsystemSelector rest;
  for (int i = 1; i < k; ++i) rest.indices.push_back(i);
  const double rhs = von_neumann_entropy(partial_trace(rho, {0})) +
                     von_neumann_entropy(rho) -
                     von_neumann_entropy(partial_trace(rho, rest));
  return make_report("entropic_k", lhs, rhs, tol);
}

double ghz_fidelity_bound(int d, int k) {
  if (d < 2 || k < 3) throw std::domain_error("bound needs d >= 2, k >= 3");
  const double dd = d, kk = k;
  const double num =
      dd * (3.0 - kk * (dd + 1.0) + kk * kk * dd +
            2.0 * std::sqrt(2.0 + kk * (dd - 1.0) - dd));
  const double den = 1.0 + 4.0 * dd - 2.0 * dd * kk + kk * kk * dd * dd;
  return num / den;
}

WitnessReport fidelity_witness(const DensityMatrix& rho, int d, int k,
                               double tol) {
  if (rho.num_subsystems() != k)
    throw std::domain_error("state has wrong party count");
  for (int dim : rho.dims())
    if (dim != d) throw std::domain_error("state has wrong local dimension");
  const double lhs = fidelity_with_pure(rho, ghz_vector(d, k));
  const double rhs = ghz_fidelity_bound(d, k);
  return make_report("ghz_fidelity", lhs, rhs, tol);
}

LemmaBounds lemma_bounds(double F, int d) {
  if (F < 0.0 || F > 1.0) throw std::domain_error("fidelity outside [0,1]");
  if (d < 2) throw std::domain_error("d must be >= 2");
  LemmaBounds b;
  b.pmax = 1.0 + (1.0 / d - 1.0) * F + 2.0 * std::sqrt(F * (1.0 - F) / d);
  b.pmin = F;
  return b;
}

}  // namespace netwit
