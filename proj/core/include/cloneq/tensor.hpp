#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "cloneq/errors.hpp"

namespace cloneq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense side length d^n above which construction is refused by default.
inline constexpr std::int64_t kDimGuard = 4096;

// d^n with overflow/guard checking. Throws dimension_error past the guard.
std::int64_t tensor_side(int local_dim, int sites, std::int64_t guard = kDimGuard);

// Operator on (C^d)^{⊗n}, stored dense. Site 0 is the most significant digit
// of the row/column multi-index: index = sum_k i_k * d^(n-1-k).
class TensorOperator {
 public:
  TensorOperator(int local_dim, int sites, Matrix entries,
                 std::int64_t guard = kDimGuard);

  int local_dim() const { return d_; }
  int sites() const { return n_; }
  std::int64_t side() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

 private:
  int d_;
  int n_;
  Matrix mat_;
};

// Vector on (C^d)^{⊗n}, same index convention. sites may be 0 (length-1).
class TensorVector {
 public:
  TensorVector(int local_dim, int sites, CVector entries,
               std::int64_t guard = kDimGuard);

  int local_dim() const { return d_; }
  int sites() const { return n_; }
  std::int64_t length() const { return vec_.size(); }
  const CVector& vector() const { return vec_; }

 private:
  int d_;
  int n_;
  CVector vec_;
};

TensorOperator identity(int d, int n, std::int64_t guard = kDimGuard);

// Unnormalised maximally entangled pair sum_i |i>|i> across sites (j, k).
// Returns the bare two-site vector; combine with omega_embed to place it
// inside a larger register. Requires 0 <= j < k <= n-1.
TensorVector omega_vector(int d, int n, int j, int k);

// Full n-site vector with the pair sum_i |i>_j |i>_k at sites (j, k) and
// `rest` on the remaining n-2 sites, taken in increasing site order.
TensorVector omega_embed(int d, int n, int j, int k, const TensorVector& rest,
                         std::int64_t guard = kDimGuard);

// omega_(j,k) ⊗ I on the remaining sites, where omega = |Omega><Omega|.
TensorOperator omega_projector(int d, int n, int j, int k,
                               std::int64_t guard = kDimGuard);

// Transpose the indices of one site only. Involution.
TensorOperator partial_transpose(const TensorOperator& m, int site);

// Trace out the complement of `keep`. Output sites are relabelled in
// increasing order of the kept original sites. keep must be nonempty.
TensorOperator partial_trace(const TensorOperator& m, const std::vector<int>& keep);

// Kronecker products with the left factor on the more significant sites.
TensorOperator tensor_product(const TensorOperator& a, const TensorOperator& b);
TensorVector tensor_product(const TensorVector& a, const TensorVector& b);

// |v><v|
TensorOperator outer(const TensorVector& v);

// max_ij |M_ij - conj(M_ji)|
double hermiticity_residual(const TensorOperator& m);

}  // namespace cloneq
