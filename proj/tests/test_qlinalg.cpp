#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netwit/qlinalg.hpp"
#include "netwit/random.hpp"
#include "testutil.hpp"

using namespace netwit;
using testutil::max_abs_diff;

namespace {

Vector basis_vec(int dim, int i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

DensityMatrix qubit_proj(int i) {
  return DensityMatrix::from_pure({2}, basis_vec(2, i));
}

Vector phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("tensor of basis projectors") {
  auto t = tensor(qubit_proj(0), qubit_proj(0));
  CHECK(t.dims() == std::vector<int>{2, 2});
  CHECK(t.matrix()(0, 0).real() == doctest::Approx(1.0));
  CHECK(t.matrix().cwiseAbs().sum() == doctest::Approx(1.0));

  auto t3 = tensor(tensor(qubit_proj(0), qubit_proj(0)), qubit_proj(0));
  CHECK(t3.dims() == std::vector<int>{2, 2, 2});
  CHECK(t3.side() == 8);
}

TEST_CASE("tensor trace is multiplicative (oracle: direct product)") {
  Rng rng(11);
  for (int it = 0; it < 20; ++it) {
    auto a = rng.random_state({2, 2}, 2);
    auto b = rng.random_state({3}, 2);
    auto t = tensor(static_cast<const HermitianOperator&>(a),
                    static_cast<const HermitianOperator&>(b));
    CHECK(std::abs(t.matrix().trace() -
                   a.matrix().trace() * b.matrix().trace()) < 1e-12);
  }
}

TEST_CASE("partial trace of maximally entangled state") {
  auto phi = DensityMatrix::from_pure({2, 2}, phi_plus());
  auto red = partial_trace(phi, SubsystemSelector{0});
  CHECK(max_abs_diff(red.matrix(), 0.5 * Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("partial trace against elementwise oracle and product rule") {
  Rng rng(12);
  for (int it = 0; it < 25; ++it) {
    auto rho = rng.random_state({2, 2}, 3);
    auto sig = rng.random_state({2}, 2);
    auto prod = tensor(rho, sig);
    auto back = partial_trace(prod, SubsystemSelector{0, 1});
    CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
    auto orc = testutil::ptrace_oracle(prod.matrix(), {2, 2, 2}, {0, 1});
    CHECK(max_abs_diff(back.matrix(), orc) < 1e-12);

    auto keep_last = partial_trace(prod, SubsystemSelector{2});
    CHECK(max_abs_diff(keep_last.matrix(), sig.matrix()) < 1e-12);
  }
}

TEST_CASE("partial trace keep-all is identity") {
  Rng rng(13);
  auto rho = rng.random_state({2, 3}, 2);
  auto same = partial_trace(rho, SubsystemSelector{0, 1});
  CHECK(max_abs_diff(same.matrix(), rho.matrix()) < 1e-14);
}

TEST_CASE("partial trace rejects invalid selectors") {
  Rng rng(14);
  auto rho = rng.random_state({2, 2}, 1);
  CHECK_THROWS_AS(partial_trace(rho, SubsystemSelector{2}),
                  std::domain_error);
  CHECK_THROWS_AS(partial_trace(rho, SubsystemSelector{0, 0}),
                  std::domain_error);
}

TEST_CASE("partial transpose of phi+ has a -1/2 eigenvalue") {
  auto phi = DensityMatrix::from_pure({2, 2}, phi_plus());
  auto pt = partial_transpose(phi, SubsystemSelector{1});
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt.matrix(), Eigen::EigenvaluesOnly);
  // Oracle: the explicit 4x4 matrix swaps the |01><10| corner, spectrum
  // {1/2, 1/2, 1/2, -1/2}.
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(es.eigenvalues()(3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose is an involution preserving trace/hermiticity") {
  Rng rng(15);
  for (int it = 0; it < 20; ++it) {
    auto rho = rng.random_state({2, 2, 2}, 2);
    auto pt = partial_transpose(rho, SubsystemSelector{1, 2});
    CHECK(std::abs(pt.matrix().trace() - rho.matrix().trace()) < 1e-13);
    CHECK(max_abs_diff(pt.matrix(), pt.matrix().adjoint()) < 1e-13);
    auto back = partial_transpose(pt, SubsystemSelector{1, 2});
    CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-13);
  }
}

TEST_CASE("product states stay PSD under factor-wise partial transpose") {
  Rng rng(16);
  for (int it = 0; it < 20; ++it) {
    auto prod = tensor(rng.random_state({2}, 2), rng.random_state({2, 2}, 2));
    // Transposing whole tensor factors keeps each factor PSD.
    for (auto part : {SubsystemSelector{0}, SubsystemSelector{1, 2},
                      SubsystemSelector{0, 1, 2}}) {
      CHECK(min_eigenvalue(partial_transpose(prod, part)) > -1e-12);
    }
  }
}

TEST_CASE("permutation of basis states and group properties") {
  auto s01 = tensor(qubit_proj(0), qubit_proj(1));
  auto swapped = permute_subsystems(s01, {1, 0});
  auto s10 = tensor(qubit_proj(1), qubit_proj(0));
  CHECK(max_abs_diff(swapped.matrix(), s10.matrix()) < 1e-14);

  Rng rng(17);
  auto rho = rng.random_state({2, 3, 2}, 2);
  std::vector<int> perm = {2, 0, 1};  // slot s -> position perm[s]
  std::vector<int> inv(3);
  for (int s = 0; s < 3; ++s) inv[perm[s]] = s;
  auto round = permute_subsystems(permute_subsystems(rho, perm), inv);
  CHECK(max_abs_diff(round.matrix(), rho.matrix()) < 1e-13);
}

TEST_CASE("permutation commutes with partial trace") {
  Rng rng(18);
  for (int it = 0; it < 10; ++it) {
    auto rho = rng.random_state({2, 2, 2}, 2);
    std::vector<int> perm = {1, 2, 0};
    auto lhs = partial_trace(permute_subsystems(rho, perm),
                             SubsystemSelector{perm[0], perm[2]});
    auto rhs = partial_trace(rho, SubsystemSelector{0, 2});
    // Kept positions {1, 0} sort to (pos0, pos1) = (old slot 2, old slot 0),
    // the reverse of rhs's (old slot 0, old slot 2) order.
    CHECK(max_abs_diff(lhs.matrix(),
                       permute_subsystems(rhs, {1, 0}).matrix()) < 1e-13);
  }
}

TEST_CASE("permutation preserves spectrum and entropy") {
  Rng rng(19);
  for (int it = 0; it < 10; ++it) {
    auto rho = rng.random_state({2, 2, 2}, 3);
    auto perm_rho = permute_subsystems(rho, {2, 0, 1});
    Eigen::SelfAdjointEigenSolver<Matrix> ea(rho.matrix(),
                                             Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> eb(perm_rho.matrix(),
                                             Eigen::EigenvaluesOnly);
    CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(von_neumann_entropy(rho) ==
          doctest::Approx(von_neumann_entropy(perm_rho)).epsilon(1e-9));
  }
}

TEST_CASE("entropy of named states") {
  const int d = 4;
  DensityMatrix mixed({d}, Matrix::Identity(d, d) / d);
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(2.0).epsilon(1e-12));

  auto pure = DensityMatrix::from_pure({2, 2}, phi_plus());
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-9));

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.25;
  diag(1, 1) = 0.75;
  DensityMatrix rho({2}, diag);
  const double h = testutil::pmf_entropy_oracle({0.25, 0.75});
  CHECK(von_neumann_entropy(rho) == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("entropy is unitarily invariant") {
  Rng rng(20);
  for (int it = 0; it < 10; ++it) {
    auto rho = rng.random_state({2, 2}, 2);
    Matrix u = rng.haar_unitary(4);
    DensityMatrix rot({2, 2}, u * rho.matrix() * u.adjoint(),
                      Tolerances{.herm = 1e-8});
    CHECK(von_neumann_entropy(rot) ==
          doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-9));
  }
}

TEST_CASE("fidelity with pure states") {
  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  auto ghz_rho = DensityMatrix::from_pure({2, 2, 2}, ghz);
  CHECK(fidelity_with_pure(ghz_rho, ghz) == doctest::Approx(1.0));

  auto zzz = DensityMatrix::from_pure({2, 2, 2}, basis_vec(8, 0));
  CHECK(fidelity_with_pure(zzz, ghz) == doctest::Approx(0.5).epsilon(1e-12));

  DensityMatrix mixed({2, 2, 2}, Matrix::Identity(8, 8) / 8.0);
  CHECK(fidelity_with_pure(mixed, ghz) == doctest::Approx(0.125));

  CHECK_THROWS_AS(fidelity_with_pure(mixed, Vector::Zero(4)),
                  std::domain_error);

  Rng rng(21);
  for (int it = 0; it < 50; ++it) {
    auto rho = rng.random_state({2, 2}, 2);
    double f = fidelity_with_pure(rho, rng.haar_vector(4));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("min eigenvalue basics") {
  HermitianOperator id({2, 2}, Matrix::Identity(4, 4));
  CHECK(min_eigenvalue(id) == doctest::Approx(1.0));
  HermitianOperator zero({2}, Matrix::Zero(2, 2));
  CHECK(min_eigenvalue(zero) == doctest::Approx(0.0));
}

TEST_CASE("density matrix validation") {
  Matrix bad = Matrix::Identity(4, 4);  // trace 4
  CHECK_THROWS_AS(DensityMatrix({2, 2}, bad), std::domain_error);

  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator({2}, nonherm), std::domain_error);

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({2}, neg), std::domain_error);

  CHECK_THROWS_AS(DensityMatrix({2, 2}, Matrix::Identity(2, 2) / 2.0),
                  std::domain_error);
}

TEST_CASE("entry maps agree with numeric operations") {
  Rng rng(22);
  auto rho = rng.random_state({2, 2, 2}, 2);
  auto m1 = ptrace_entry_map({2, 2, 2}, SubsystemSelector{0, 2});
  CHECK(max_abs_diff(m1.apply(rho.matrix()),
                     partial_trace(rho, SubsystemSelector{0, 2}).matrix()) <
        1e-14);
  auto m2 = ptranspose_entry_map({2, 2, 2}, SubsystemSelector{1});
  CHECK(max_abs_diff(m2.apply(rho.matrix()),
                     partial_transpose(rho, SubsystemSelector{1}).matrix()) <
        1e-14);
  auto m3 = permute_entry_map({2, 2, 2}, {1, 2, 0});
  CHECK(max_abs_diff(m3.apply(rho.matrix()),
                     permute_subsystems(rho, {1, 2, 0}).matrix()) < 1e-14);
  // composition: trace then permute
  auto comp = compose(permute_entry_map({2, 2}, {1, 0}), m1);
  auto expect = permute_subsystems(partial_trace(rho, SubsystemSelector{0, 2}),
                                   {1, 0});
  CHECK(max_abs_diff(comp.apply(rho.matrix()), expect.matrix()) < 1e-14);
}
