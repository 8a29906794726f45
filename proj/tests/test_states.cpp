#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netwit/states.hpp"
#include "netwit/witness.hpp"
#include "netwit/random.hpp"
#include "testutil.hpp"

using namespace netwit;
using testutil::max_abs_diff;

TEST_CASE("GHZ state marginals") {
  auto ghz = ghz_state(2, 3);
  for (int party = 0; party < 3; ++party) {
    auto red = partial_trace(ghz, SubsystemSelector{party});
    CHECK(max_abs_diff(red.matrix(), 0.5 * Matrix::Identity(2, 2)) < 1e-12);
  }
  auto ab = partial_trace(ghz, SubsystemSelector{0, 1});
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(max_abs_diff(ab.matrix(), expect) < 1e-12);

  for (int d : {2, 3, 4})
    CHECK(fidelity_with_pure(ghz_state(d, 3), ghz_vector(d, 3)) ==
          doctest::Approx(1.0));
}

TEST_CASE("W state marginals and fidelities") {
  auto w = w_state();
  auto red = partial_trace(w, SubsystemSelector{0});
  // By-hand partial trace of (|001>+|010>+|100>)/sqrt(3): diag(2/3, 1/3).
  CHECK(red.matrix()(0, 0).real() == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(red.matrix()(1, 1).real() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(std::abs(red.matrix()(0, 1)) < 1e-13);

  CHECK(fidelity_with_pure(w, w_vector()) == doctest::Approx(1.0));
  auto zzz = DensityMatrix::from_pure({2, 2, 2}, [] {
    Vector v = Vector::Zero(8);
    v(0) = 1.0;
    return v;
  }());
  CHECK(fidelity_with_pure(zzz, w_vector()) == doctest::Approx(0.0));
}

TEST_CASE("computational measurement of canonical states") {
  auto p = measure(ghz_state(2, 3), computational_measurement({2, 2, 2}));
  CHECK(p.probabilities[0] == doctest::Approx(0.5));
  CHECK(p.probabilities[7] == doctest::Approx(0.5));
  double middle = 0.0;
  for (int i = 1; i < 7; ++i) middle += p.probabilities[i];
  CHECK(middle < 1e-12);

  DensityMatrix mixed({2, 2, 2}, Matrix::Identity(8, 8) / 8.0);
  auto q = measure(mixed, computational_measurement({2, 2, 2}));
  for (double v : q.probabilities) CHECK(v == doctest::Approx(0.125));
}

TEST_CASE("measurement yields valid distributions (POVM completeness)") {
  Rng rng(31);
  for (int it = 0; it < 1000; ++it) {
    auto rho = rng.random_state({2, 2, 2}, 1 + it % 3);
    ProductMeasurement meas;
    for (int party = 0; party < 3; ++party)
      meas.povms.push_back(rng.random_povm(2, 2 + it % 2));
    meas.validate();
    auto p = measure(rho, meas);
    p.validate();
    double sum = 0.0;
    for (double v : p.probabilities) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("measurement structure mismatch raises") {
  auto rho = ghz_state(2, 3);
  CHECK_THROWS_AS(measure(rho, computational_measurement({2, 2})),
                  std::domain_error);
  CHECK_THROWS_AS(measure(rho, computational_measurement({2, 2, 3})),
                  std::domain_error);
}

TEST_CASE("shannon entropy basics") {
  JointDistribution ghz_pmf{{2, 2, 2}, {0.5, 0, 0, 0, 0, 0, 0, 0.5}};
  CHECK(shannon_entropy(ghz_pmf, {0}) == doctest::Approx(1.0));
  CHECK(shannon_entropy(ghz_pmf, {0, 1, 2}) == doctest::Approx(1.0));

  JointDistribution det{{2, 2}, {0, 0, 1.0, 0}};
  CHECK(shannon_entropy(det, {0, 1}) == doctest::Approx(0.0));

  Rng rng(32);
  for (int it = 0; it < 50; ++it) {
    // product pmf: H(x, y) = H(x) + H(y)
    std::vector<double> px(3), py(4);
    double sx = 0, sy = 0;
    for (auto& v : px) sx += (v = rng.uniform() + 1e-3);
    for (auto& v : py) sy += (v = rng.uniform() + 1e-3);
    JointDistribution joint{{3, 4}, std::vector<double>(12)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j)
        joint.probabilities[i * 4 + j] = (px[i] / sx) * (py[j] / sy);
    CHECK(shannon_entropy(joint, {0, 1}) ==
          doctest::Approx(shannon_entropy(joint, {0}) +
                          shannon_entropy(joint, {1}))
              .epsilon(1e-12));
  }
}

TEST_CASE("mutual information basics") {
  JointDistribution corr{{2, 2}, {0.5, 0, 0, 0.5}};
  CHECK(mutual_information(corr, {0}, {1}) == doctest::Approx(1.0));

  JointDistribution indep{{2, 2}, {0.25, 0.25, 0.25, 0.25}};
  CHECK(mutual_information(indep, {0}, {1}) == doctest::Approx(0.0));

  auto p = measure(ghz_state(2, 3), computational_measurement({2, 2, 2}));
  CHECK(mutual_information(p, {0}, {1}) == doctest::Approx(1.0));

  CHECK_THROWS_AS(mutual_information(p, {0, 1}, {1}), std::domain_error);

  Rng rng(33);
  for (int it = 0; it < 200; ++it) {
    JointDistribution j{{2, 3, 2}, std::vector<double>(12)};
    double s = 0;
    for (auto& v : j.probabilities) s += (v = rng.uniform());
    for (auto& v : j.probabilities) v /= s;
    CHECK(mutual_information(j, {0}, {2}) >= -1e-12);
  }
}

TEST_CASE("coincidence probability") {
  auto p = measure(ghz_state(2, 3), computational_measurement({2, 2, 2}));
  CHECK(coincidence_probability(p, {0}, {1}) == doctest::Approx(1.0));

  JointDistribution indep{{3, 3}, std::vector<double>(9, 1.0 / 9)};
  CHECK(coincidence_probability(indep, {0}, {1}) ==
        doctest::Approx(1.0 / 3).epsilon(1e-12));

  // W state, computational basis: outcomes {001, 010, 100} uniform; a = b
  // only for 001.
  auto w = measure(w_state(), computational_measurement({2, 2, 2}));
  CHECK(coincidence_probability(w, {0}, {1}) ==
        doctest::Approx(1.0 / 3).epsilon(1e-10));

  JointDistribution bad{{2, 3}, std::vector<double>(6, 1.0 / 6)};
  CHECK_THROWS_AS(coincidence_probability(bad, {0}, {1}), std::domain_error);
}

TEST_CASE("lemma: correlation transitivity on random pmfs") {
  Rng rng(34);
  for (int it = 0; it < 2000; ++it) {
    JointDistribution j{{2, 2, 2}, std::vector<double>(8)};
    double s = 0;
    for (auto& v : j.probabilities) s += (v = rng.uniform());
    for (auto& v : j.probabilities) v /= s;
    const double pxy = coincidence_probability(j, {0}, {1});
    const double pyz = coincidence_probability(j, {1}, {2});
    const double pxz = coincidence_probability(j, {0}, {2});
    CHECK(pxz >= pxy + pyz - 1.0 - 1e-10);
    const double hxy = mutual_information(j, {0}, {1});
    const double hyz = mutual_information(j, {1}, {2});
    const double hxz = mutual_information(j, {0}, {2});
    const double hy = shannon_entropy(j, {1});
    CHECK(hxz >= hxy + hyz - hy - 1e-10);
  }
}

TEST_CASE("lemma: computational coincidence at least GHZ fidelity") {
  Rng rng(35);
  auto meas = computational_measurement({2, 2, 2});
  const auto ghz = ghz_vector(2, 3);
  for (int it = 0; it < 300; ++it) {
    auto rho = rng.random_state({2, 2, 2}, 1 + it % 4);
    const double f = fidelity_with_pure(rho, ghz);
    auto p = measure(rho, meas);
    for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {0, 2}})
      CHECK(coincidence_probability(p, {a}, {b}) >= f - 1e-10);
  }
}

TEST_CASE("lemma: outside-correlation bounds from fidelity") {
  Rng rng(36);
  const auto ghz = ghz_vector(2, 3);
  auto meas4 = computational_measurement({2, 2, 2, 2});
  for (int it = 0; it < 300; ++it) {
    auto sigma = rng.random_state({2, 2, 2, 2}, 1 + it % 3);
    const double f =
        fidelity_with_pure(partial_trace(sigma, SubsystemSelector{0, 1, 2}),
                           ghz);
    auto p = measure(sigma, meas4);
    const double pay = coincidence_probability(p, {0}, {3});
    const auto bounds = lemma_bounds(f, 2);
    CHECK(pay <= bounds.pmax + 1e-9);

    // Entropic half, arbitrary product measurements.
    ProductMeasurement pm;
    for (int party = 0; party < 4; ++party)
      pm.povms.push_back(rng.random_povm(2, 2));
    auto q = measure(sigma, pm);
    const double hay = mutual_information(q, {0}, {3});
    const double rhs =
        von_neumann_entropy(partial_trace(sigma, SubsystemSelector{0})) +
        von_neumann_entropy(partial_trace(sigma, SubsystemSelector{0, 1, 2})) -
        von_neumann_entropy(partial_trace(sigma, SubsystemSelector{1, 2}));
    CHECK(hay <= rhs + 1e-9);
  }
}
