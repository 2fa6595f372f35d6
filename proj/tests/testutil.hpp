#pragma once

#include <cmath>
#include <vector>

#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"
#include "cloneq/tensor.hpp"

namespace testutil {

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// strictly positive normalized weight vector
inline std::vector<double> random_beta(int n, int d, cloneq::Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = 0.05 + rng.uniform();
  return cloneq::rescale_to_beta_normalization(v, d);
}

inline std::vector<double> random_signed(int n, cloneq::Rng& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
  return x;
}

inline cloneq::TensorOperator random_state(int d, cloneq::Rng& rng) {
  const cloneq::CVector psi = cloneq::haar_pure_state(d, rng);
  return cloneq::TensorOperator(d, 1, psi * psi.adjoint());
}

inline cloneq::Matrix random_matrix(std::int64_t n, cloneq::Rng& rng) {
  cloneq::Matrix m(n, n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      m(i, j) = cloneq::Complex(rng.normal(), rng.normal());
  return m;
}

}  // namespace testutil
