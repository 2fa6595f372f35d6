#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cloneq/tensor.hpp"

namespace cloneq {

// Choi matrix of a 1 -> N channel on N+1 sites; site 0 is the input leg,
// site i the i-th clone. C = (id ⊗ T)|Omega><Omega|, so Tr C = d and
// Tr_{1..N} C = I for a channel.
struct ChoiMatrix {
  TensorOperator op;
  int d = 0;
  int N = 0;
};

// The projector candidate before channel scaling:
// C~ = sum_{a,b} (beta_a beta_b / (N-1)!) sum_{sigma in Sigma_{a,b}} Pi_sigma^G.
// An orthogonal projection exactly when beta is normalized.
ChoiMatrix build_choi_unscaled(const std::vector<double>& beta, int d, int N,
                               std::int64_t guard = kDimGuard);

// Choi matrix of the optimal cloner T_beta:
// C = (d / sym_dim(N,d)) * ((N+d-1)/N) * C~. Prefactor from exact integers.
ChoiMatrix build_choi(const std::vector<double>& beta, int d, int N,
                      std::int64_t guard = kDimGuard);

// P_beta = (1/N!) sum_{sigma in S_N} beta[sigma(0)] Pi_sigma on N sites.
TensorOperator build_p_beta(const std::vector<double>& beta, int d, int N,
                            std::int64_t guard = kDimGuard);

// Optimal cloner with both representations precomputed.
class CloningChannel {
 public:
  CloningChannel(std::vector<double> beta, int d, int N,
                 std::int64_t guard = kDimGuard);

  int d() const { return d_; }
  int N() const { return N_; }
  const std::vector<double>& beta() const { return beta_; }
  const ChoiMatrix& choi() const { return choi_; }

  // T(rho) = (d N (N+d-1) / sym_dim) * P_beta (rho ⊗ I^{⊗(N-1)}) P_beta^T.
  // rho must be a density matrix on one site.
  TensorOperator apply(const TensorOperator& rho) const;

  // Linear action on an arbitrary one-site operator; only the shape is
  // checked. This is what enters Choi reassembly via matrix units.
  TensorOperator apply_linear(const TensorOperator& op) const;

 private:
  std::vector<double> beta_;
  int d_;
  int N_;
  TensorOperator p_beta_;
  double channel_scale_;
  ChoiMatrix choi_;
};

// T(rho) recovered from the Choi matrix: Tr_0 [ C (rho^T ⊗ I^{⊗N}) ].
TensorOperator channel_from_choi(const ChoiMatrix& c, const TensorOperator& rho);

// Choi matrix of an arbitrary 1 -> N map, assembled from matrix units.
ChoiMatrix choi_of_map(const std::function<TensorOperator(const TensorOperator&)>& t,
                       int d, int N, std::int64_t guard = kDimGuard);

struct MarginalFit {
  std::vector<double> p;          // fitted depolarizing weight per clone
  std::vector<double> residual;   // worst Frobenius misfit per clone
  double max_residual = 0.0;
};

// Least-squares fit of every single-clone marginal against {rho, I/d} over
// Haar-random pure inputs. For a valid cloner the fit is exact and p matches
// optimal_surface_point(beta).
MarginalFit fit_marginals(const CloningChannel& ch, int samples, std::uint64_t seed);

// Mean fidelity weighted by alpha: <C, R_alpha> / (d (d+1)).
double average_fidelity(const ChoiMatrix& c, const std::vector<double>& alpha);

// max over sampled Haar unitaries of || C (U~ ⊗ U^{⊗N}) - (U~ ⊗ U^{⊗N}) C ||_F,
// U~ the entrywise conjugate. Zero for covariant channels.
double covariance_check(const ChoiMatrix& c, int trials, std::uint64_t seed);

struct ChoiCertificate {
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  double tp_residual = 0.0;         // max-abs of Tr_{1..N} C - I
  double projector_residual = 0.0;  // Frobenius norm of C~^2 - C~
};

ChoiCertificate certify_choi(const std::vector<double>& beta, int d, int N,
                             std::int64_t guard = kDimGuard);

}  // namespace cloneq
