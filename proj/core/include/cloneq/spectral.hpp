#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "cloneq/tensor.hpp"

namespace cloneq {

// S_x = sum_i |x_i| * omega_(0,i) ⊗ I on N+1 sites, N = x.size().
// Hermitian; positive semidefinite.
TensorOperator build_S(const std::vector<double>& x, int d,
                       std::int64_t guard = kDimGuard);

// R_alpha = ||alpha||_1 * I + S_alpha on N+1 sites.
TensorOperator build_R_alpha(const std::vector<double>& alpha, int d,
                             std::int64_t guard = kDimGuard);

// Largest eigenvalue by dense Hermitian eigendecomposition. The input must be
// Hermitian within 1e-12 (relative to its largest entry).
double lambda_max_full(const TensorOperator& m);

// The N x N reduction of S_x: row i has d*x_i on the diagonal and x_i in
// every other column. Its spectral radius equals lambda_max_full(build_S(x)).
Eigen::MatrixXd reduced_s_plus(const std::vector<double>& x, int d);

// Spectral radius of reduced_s_plus(|x|, d), computed on the support of x via
// the symmetric similarity D^{1/2} ((d-1) I + J) D^{1/2}, D = diag(|x|).
double lambda_max_reduced(const std::vector<double>& x, int d);

// (d-1) sum beta_i^2 + (sum beta_i)^2 - 1
double beta_normalization_residual(const std::vector<double>& beta, int d);

// Rescale a nonzero direction onto the normalization surface
// (d-1) sum beta^2 + (sum beta)^2 = 1 by its positive root.
std::vector<double> rescale_to_beta_normalization(std::vector<double> v, int d);

struct PerronResult {
  std::vector<double> beta;  // normalized, entrywise positive
  double lambda = 0.0;       // lambda_max_reduced(alpha)
  bool degenerate = false;   // some alpha_i was zero; epsilon limit was used
};

// Positive top eigenvector of the reduction of S_alpha, rescaled to the
// normalization surface. alpha must be nonnegative and not all zero; zero
// entries are handled as the limit along alpha + eps*1 at eps = 1e-9.
PerronResult perron_beta(const std::vector<double>& alpha, int d);

// The full-space top eigenvector candidate for S on the support of beta:
// chi = sum_i beta_i |Omega>_(0,i) ⊗ |v>, v the normalized uniform symmetric
// vector on the remaining N-1 sites.
TensorVector chi_vector(const std::vector<double>& beta, int d,
                        std::int64_t guard = kDimGuard);

}  // namespace cloneq
