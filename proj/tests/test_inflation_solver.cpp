// Ring-inflation SDP solves. These reproduce the numeric bounds and exercise
// certification, so the suite takes a few minutes of CPU.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netwit/inflation.hpp"
#include "netwit/random.hpp"
#include "netwit/states.hpp"

using namespace netwit;

namespace {

double solve_bound(const Vector& target, double gap_tol = 1e-6) {
  auto backend = make_backend();
  auto problem = build_ring_inflation(target, std::nullopt);
  SolveOptions opts;
  opts.gap_tol = gap_tol;
  auto cert = solve_ring_inflation(problem, *backend, opts);
  REQUIRE(cert.solver_status == SolveStatus::optimal);
  return cert.objective_value;
}

}  // namespace

TEST_CASE("GHZ fidelity bound matches (1+sqrt(3))/4") {
  auto backend = make_backend();
  auto problem = build_ring_inflation(ghz_vector(2, 3), std::nullopt);
  auto cert = solve_ring_inflation(problem, *backend);
  REQUIRE(cert.solver_status == SolveStatus::optimal);
  const double expect = (1.0 + std::sqrt(3.0)) / 4.0;
  CHECK(cert.objective_value == doctest::Approx(expect).epsilon(2e-4));

  // The certificate satisfies the constraint system.
  REQUIRE(cert.tau.has_value());
  auto check = verify_certificate(std::nullopt, *cert.tau, *cert.gamma, 1e-6);
  CHECK(check.ok);

  // Dual witness: upper-bounds the fidelity functional on feasible states.
  auto w = extract_dual_witness(cert);
  const Matrix& W = w.matrix();
  const double opt = cert.objective_value;
  // On the program's own optimizer the witness is tight.
  auto rho_star = partial_trace(*cert.tau, SubsystemSelector{0, 1, 2});
  CHECK((W * rho_star.matrix()).trace().real() ==
        doctest::Approx(opt).epsilon(1e-4));
  // On the maximally mixed state it stays below the optimum.
  CHECK((W * Matrix::Identity(8, 8) / 8.0).trace().real() <= opt + 1e-6);
  // On GHZ itself it reaches the (violating) fidelity 1.
  CHECK((W * ghz_state(2, 3).matrix()).trace().real() >= 1.0 - 1e-6);
  // On random separable states (feasible by construction) it never exceeds
  // the optimum.
  Rng rng(71);
  for (int it = 0; it < 100; ++it) {
    Matrix rho = Matrix::Zero(8, 8);
    for (int j = 0; j < 3; ++j) {
      auto a = rng.random_state({2}, 2);
      auto b = rng.random_state({2}, 2);
      auto c = rng.random_state({2}, 2);
      rho += tensor(tensor(a, b), c).matrix() / 3.0;
    }
    CHECK((W * rho).trace().real() <= opt + 1e-6);
  }
}

TEST_CASE("W fidelity bound reproduces 0.7602") {
  const double v = solve_bound(w_vector());
  CHECK(std::abs(v - 0.7602) < 1e-3);
}

TEST_CASE("optimum is invariant under party relabelings of the target") {
  // An asymmetric target distinguishes the three pairings.
  Vector t = Vector::Zero(8);
  t(0b001) = 0.8;
  t(0b010) = std::sqrt(1.0 - 0.64 - 0.09);
  t(0b100) = 0.3;
  const double base = solve_bound(t, 1e-6);
  for (const auto& perm : {std::vector<int>{1, 2, 0}, {2, 0, 1}}) {
    // Permute the target vector's tensor slots.
    Vector tp = Vector::Zero(8);
    for (int i = 0; i < 8; ++i) {
      const auto d = unpack_index(i, {2, 2, 2});
      std::vector<int> nd(3);
      for (int s = 0; s < 3; ++s) nd[perm[s]] = d[s];
      tp(pack_index(nd, {2, 2, 2})) = t(i);
    }
    const double v = solve_bound(tp, 1e-6);
    CHECK(std::abs(v - base) < 1e-5);
  }
}

TEST_CASE("removing PPT constraints never decreases the optimum") {
  // Rebuild the GHZ program dropping one PPT block at a time: the feasible
  // set only grows, so the optimum cannot drop.
  auto backend = make_backend();
  const auto full = build_ring_inflation(ghz_vector(2, 3), std::nullopt);
  SolveOptions opts;
  opts.gap_tol = 1e-6;
  auto base = backend->solve(full, opts);
  REQUIRE(base.status == SolveStatus::optimal);

  for (const std::string dropped :
       {"tau_pt", "gamma_ppt_b4", "gamma_ppt_c4", "gamma_ppt_a3"}) {
    SdpProblem sub;
    sub.sense = full.sense;
    std::vector<int> remap(full.blocks.size(), -1);
    int kept = -1;
    for (size_t b = 0; b < full.blocks.size(); ++b) {
      if (full.blocks[b].name == dropped) {
        kept = static_cast<int>(b);
        continue;
      }
      remap[b] = sub.add_block(full.blocks[b].name, full.blocks[b].side);
    }
    for (const auto& eq : full.eq_constraints) {
      bool uses_dropped = false;
      for (const auto& t : eq.terms)
        if (t.block == kept) uses_dropped = true;
      if (uses_dropped) continue;
      EqConstraint neq = eq;
      for (auto& t : neq.terms) t.block = remap[t.block];
      sub.eq_constraints.push_back(std::move(neq));
    }
    sub.objective = full.objective;
    for (auto& t : sub.objective) t.block = remap[t.block];
    for (const auto& [name, m] : full.start_hint)
      if (name != dropped) sub.start_hint[name] = m;

    auto rel = backend->solve(sub, opts);
    REQUIRE(rel.status == SolveStatus::optimal);
    CHECK(rel.objective >= base.objective - 1e-5);
  }
}

TEST_CASE("feasibility solves on canonical states") {
  auto backend = make_backend();
  DensityMatrix mixed({2, 2, 2}, Matrix::Identity(8, 8) / 8.0);
  auto feas = build_ring_inflation(std::nullopt, mixed);
  auto cert = solve_ring_inflation(feas, *backend);
  REQUIRE(cert.solver_status == SolveStatus::optimal);
  CHECK(verify_certificate(mixed, *cert.tau, *cert.gamma, 1e-6).ok);

  auto ghz_fixed = build_ring_inflation(std::nullopt, ghz_state(2, 3));
  auto bad = backend->solve(ghz_fixed);
  CHECK(bad.status == SolveStatus::infeasible);
}

TEST_CASE("certify_state on canonical states") {
  auto backend = make_backend();

  auto g = certify_state(ghz_state(2, 3), *backend);
  CHECK(g.certified_genuine);
  CHECK(g.slack > 1e-3);

  DensityMatrix mixed({2, 2, 2}, Matrix::Identity(8, 8) / 8.0);
  auto m = certify_state(mixed, *backend);
  CHECK_FALSE(m.certified_genuine);
  CHECK(m.slack < 1e-6);

  // Visibility pushing the GHZ fidelity just above the SDP optimum.
  const double v = (0.69 - 0.125) / 0.875;
  Matrix mix = v * ghz_state(2, 3).matrix() +
               (1.0 - v) * Matrix::Identity(8, 8) / 8.0;
  auto c = certify_state(DensityMatrix({2, 2, 2}, mix), *backend);
  CHECK(c.certified_genuine);
}
