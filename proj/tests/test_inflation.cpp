#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netwit/inflation.hpp"
#include "netwit/random.hpp"
#include "netwit/states.hpp"

using namespace netwit;

namespace {

// Classically correlated product certificate: for rho = sum_j w_j a_j (x) b_j
// (x) c_j, two correlated triangles and a product hexagon satisfy every
// ring-inflation constraint exactly.
struct BuiltCert {
  DensityMatrix rho, tau, gamma;
};

BuiltCert product_mixture_cert(Rng& rng, int components) {
  std::vector<double> w(components);
  double sum = 0;
  for (auto& v : w) sum += (v = rng.uniform() + 0.1);
  Matrix rho = Matrix::Zero(8, 8);
  Matrix tau = Matrix::Zero(64, 64);
  Matrix gam = Matrix::Zero(64, 64);
  for (int j = 0; j < components; ++j) {
    auto a = rng.random_state({2}, 2);
    auto b = rng.random_state({2}, 2);
    auto c = rng.random_state({2}, 2);
    auto abc = tensor(tensor(a, b), c);
    rho += (w[j] / sum) * abc.matrix();
    auto two = tensor(abc, abc);
    tau += (w[j] / sum) * two.matrix();
    gam += (w[j] / sum) * two.matrix();  // product hexagon has the same form
  }
  return {DensityMatrix({2, 2, 2}, rho),
          DensityMatrix({2, 2, 2, 2, 2, 2}, tau, Tolerances{.herm = 1e-8}),
          DensityMatrix({2, 2, 2, 2, 2, 2}, gam, Tolerances{.herm = 1e-8})};
}

}  // namespace

TEST_CASE("builder argument validation") {
  CHECK_THROWS_AS(build_ring_inflation(std::nullopt, std::nullopt),
                  std::invalid_argument);
  Rng rng(61);
  auto rho = rng.random_state({2, 2, 2}, 2);
  CHECK_THROWS_AS(build_ring_inflation(ghz_vector(2, 3), rho),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_ring_inflation(Vector::Zero(8), std::nullopt),
                  std::invalid_argument);
}

TEST_CASE("constructed network-2 certificates satisfy every emitted row") {
  Rng rng(62);
  for (int it = 0; it < 5; ++it) {
    auto cert = product_mixture_cert(rng, 3);
    const auto problem =
        build_ring_inflation(std::nullopt, cert.rho);
    problem.validate();

    // Assemble all block values from (tau, gamma).
    std::vector<Matrix> blocks(problem.blocks.size());
    blocks[problem.block_index("tau")] = cert.tau.matrix();
    blocks[problem.block_index("gamma")] = cert.gamma.matrix();
    blocks[problem.block_index("tau_pt")] =
        partial_transpose(cert.tau, SubsystemSelector{3, 4, 5}).matrix();
    const std::vector<std::pair<std::string, std::pair<std::vector<int>, int>>>
        ppt = {{"gamma_ppt_b4", {{0, 1, 2, 4}, 3}},
               {"gamma_ppt_c4", {{1, 2, 3, 5}, 3}},
               {"gamma_ppt_a3", {{0, 2, 3, 4}, 0}}};
    for (const auto& [name, sel] : ppt) {
      auto marg = partial_trace(cert.gamma, SubsystemSelector{sel.first});
      blocks[problem.block_index(name)] =
          partial_transpose(marg, SubsystemSelector{sel.second}).matrix();
    }

    double worst = 0.0;
    for (const auto& eq : problem.eq_constraints)
      worst = std::max(worst, std::abs(eval_constraint(eq, blocks)));
    CHECK(worst < 1e-10);

    for (const auto& b : blocks) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }

    auto check = verify_certificate(cert.rho, cert.tau, cert.gamma, 1e-8);
    CHECK(check.ok);
  }
}

TEST_CASE("verify_certificate flags broken certificates") {
  Rng rng(63);
  auto cert = product_mixture_cert(rng, 2);
  // Wrong rho: marginal mismatch.
  auto other = rng.random_state({2, 2, 2}, 2);
  auto bad = verify_certificate(other, cert.tau, cert.gamma, 1e-8);
  CHECK_FALSE(bad.ok);
  CHECK(bad.triangle_residual > 1e-3);

  // Asymmetric tau: swap-symmetry violation.
  auto x = rng.random_state({2}, 1);
  auto y = rng.random_state({2}, 1);
  Matrix asym =
      tensor(tensor(tensor(x, x), x), tensor(tensor(y, y), y)).matrix();
  auto bad2 = verify_certificate(
      std::nullopt, DensityMatrix({2, 2, 2, 2, 2, 2}, asym), cert.gamma, 1e-8);
  CHECK_FALSE(bad2.ok);
  CHECK(bad2.symmetry_residual > 1e-3);
}

TEST_CASE("problem sizes are as expected") {
  const auto p = build_ring_inflation(ghz_vector(2, 3), std::nullopt);
  CHECK(p.blocks.size() == 7);  // tau, gamma, tau_pt, 3 gamma PPT, rho
  CHECK(p.block_index("rho") >= 0);
  // 2 traces + symmetry + marginal + definitions + ring pairings + rho link.
  CHECK(p.eq_constraints.size() > 8000);
}
