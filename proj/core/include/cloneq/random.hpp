#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cloneq/tensor.hpp"

namespace cloneq {

// Seeded random stream. All sampling in the library goes through this so a
// run is reproducible from its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }  // [0, 1)
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Normalised vector of iid standard complex Gaussians.
CVector haar_pure_state(int dim, Rng& rng);

// QR of a complex Gaussian matrix with the R diagonal phases folded into Q.
Matrix haar_unitary(int dim, Rng& rng);

// Uniform point on the standard simplex (entries >= 0, sum 1).
std::vector<double> simplex_point(int n, Rng& rng);

}  // namespace cloneq
