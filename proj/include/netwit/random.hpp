#pragma once

#include <cstdint>
#include <random>

#include "netwit/qlinalg.hpp"

namespace netwit {

/// Seeded random source for reproducible sampling of quantum objects.
/// Gaussians use Box-Muller so that streams are identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform();                  // [0, 1)
  double gaussian();                 // standard normal
  int uniform_int(int lo, int hi);   // inclusive range

  // Derive an independent child seed for stream s.
  uint64_t child_seed(uint64_t s);

  Vector haar_vector(int dim);
  Matrix haar_unitary(int dim);
  // Random isometry C^{d_in} -> C^{d_out}, columns orthonormal (d_out >= d_in).
  Matrix haar_isometry(int d_out, int d_in);

  // Mixture of `mixture` Haar-random pure states with random weights.
  DensityMatrix random_state(const std::vector<int>& dims, int mixture = 1);

  // Random two-outcome POVM per party plus completion.
  std::vector<HermitianOperator> random_povm(int dim, int outcomes);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace netwit
