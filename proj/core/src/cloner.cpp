#include "cloneq/cloner.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "cloneq/permutation.hpp"
#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"

namespace cloneq {

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_beta(const std::vector<double>& beta, int N) {
  if (static_cast<int>(beta.size()) != N)
    throw std::invalid_argument("beta must have N entries");
}

// density-matrix validation for channel inputs
void check_state(const TensorOperator& rho, int d) {
  if (rho.local_dim() != d || rho.sites() != 1)
    throw std::invalid_argument("input state must live on a single site of dimension d");
  if (hermiticity_residual(rho) > 1e-9)
    throw std::invalid_argument("input state must be Hermitian");
  if (std::abs(rho.matrix().trace().real() - 1.0) > 1e-9)
    throw std::invalid_argument("input state must have unit trace");
}

}  // namespace

ChoiMatrix build_choi_unscaled(const std::vector<double>& beta, int d, int N,
                               std::int64_t guard) {
  check_beta(beta, N);
  const std::int64_t side = tensor_side(d, N + 1, guard);
  const double class_norm = static_cast<double>(factorial(N - 1));

  Matrix sum = Matrix::Zero(side, side);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      const double w = beta[a - 1] * beta[b - 1] / class_norm;
      if (w == 0.0) continue;
      for (const auto& sigma : enumerate_sigma_ab(N, a, b))
        sum += w * ptp_operator(sigma, d, guard).matrix();
    }
  return ChoiMatrix{TensorOperator(d, N + 1, std::move(sum), guard), d, N};
}

ChoiMatrix build_choi(const std::vector<double>& beta, int d, int N,
                      std::int64_t guard) {
  ChoiMatrix c = build_choi_unscaled(beta, d, N, guard);
  const double pref =
      double(d) * (N + d - 1) / (double(N) * double(sym_dim(N, d)));
  Matrix m = pref * c.op.matrix();
  return ChoiMatrix{TensorOperator(d, N + 1, std::move(m), guard), d, N};
}

TensorOperator build_p_beta(const std::vector<double>& beta, int d, int N,
                            std::int64_t guard) {
  check_beta(beta, N);
  const std::int64_t side = tensor_side(d, N, guard);
  Matrix sum = Matrix::Zero(side, side);
  for (const auto& sigma : all_permutations(N))
    sum += beta[sigma(0)] * permutation_operator(sigma, d, guard).matrix();
  sum /= static_cast<double>(factorial(N));
  return TensorOperator(d, N, std::move(sum), guard);
}

CloningChannel::CloningChannel(std::vector<double> beta, int d, int N,
                               std::int64_t guard)
    : beta_(std::move(beta)),
      d_(d),
      N_(N),
      p_beta_(build_p_beta(beta_, d, N, guard)),
      channel_scale_(double(d) * N * (N + d - 1) / double(sym_dim(N, d))),
      choi_(build_choi(beta_, d, N, guard)) {
  if (std::abs(beta_normalization_residual(beta_, d)) > 1e-9)
    throw std::invalid_argument("beta is not normalized");
}

TensorOperator CloningChannel::apply(const TensorOperator& rho) const {
  check_state(rho, d_);
  return apply_linear(rho);
}

TensorOperator CloningChannel::apply_linear(const TensorOperator& op) const {
  if (op.local_dim() != d_ || op.sites() != 1)
    throw std::invalid_argument("operator must live on a single site of dimension d");
  TensorOperator in = (N_ > 1)
      ? tensor_product(op, identity(d_, N_ - 1, p_beta_.side()))
      : op;
  Matrix out = channel_scale_ *
      (p_beta_.matrix() * in.matrix() * p_beta_.matrix().transpose());
  return TensorOperator(d_, N_, std::move(out), p_beta_.side());
}

TensorOperator channel_from_choi(const ChoiMatrix& c, const TensorOperator& rho) {
  check_state(rho, c.d);
  TensorOperator rho_t(c.d, 1, rho.matrix().transpose());
  TensorOperator arg =
      tensor_product(rho_t, identity(c.d, c.N, c.op.side()));
  TensorOperator prod(c.d, c.N + 1, c.op.matrix() * arg.matrix(), c.op.side());
  std::vector<int> keep(c.N);
  for (int i = 0; i < c.N; ++i) keep[i] = i + 1;
  return partial_trace(prod, keep);
}

ChoiMatrix choi_of_map(const std::function<TensorOperator(const TensorOperator&)>& t,
                       int d, int N, std::int64_t guard) {
  const std::int64_t out_side = tensor_side(d, N, guard);
  const std::int64_t side = tensor_side(d, N + 1, guard);
  Matrix c = Matrix::Zero(side, side);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      const Matrix mapped = t(TensorOperator(d, 1, std::move(unit))).matrix();
      c.block(std::int64_t(i) * out_side, std::int64_t(j) * out_side,
              out_side, out_side) = mapped;
    }
  return ChoiMatrix{TensorOperator(d, N + 1, std::move(c), guard), d, N};
}

MarginalFit fit_marginals(const CloningChannel& ch, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int d = ch.d(), N = ch.N();
  Rng rng(seed);

  MarginalFit fit;
  fit.p.assign(N, 0.0);
  fit.residual.assign(N, 0.0);
  std::vector<double> comp(N, 0.0);  // compensated accumulation of the weights

  const Matrix eye_d = Matrix::Identity(d, d);
  for (int s = 0; s < samples; ++s) {
    const CVector psi = haar_pure_state(d, rng);
    const TensorOperator rho(d, 1, psi * psi.adjoint());
    const TensorOperator out = ch.apply(rho);
    for (int i = 0; i < N; ++i) {
      const Matrix ti = partial_trace(out, {i}).matrix();
      // least squares against {rho, I/d}; Gram matrix is [[1,1/d],[1/d,1/d]]
      const double y1 = (rho.matrix().adjoint() * ti).trace().real();
      const double y2 = ti.trace().real() / d;
      const double det = (1.0 / d) * (1.0 - 1.0 / d);
      const double a = ((1.0 / d) * y1 - (1.0 / d) * y2) / det;
      const double b = (y2 - (1.0 / d) * y1) / det;
      const Matrix misfit = ti - a * rho.matrix() - (b / d) * eye_d;
      fit.residual[i] = std::max(fit.residual[i], misfit.norm());
      // Kahan step
      const double term = a - comp[i];
      const double acc = fit.p[i] + term;
      comp[i] = (acc - fit.p[i]) - term;
      fit.p[i] = acc;
    }
  }
  for (int i = 0; i < N; ++i) {
    fit.p[i] /= samples;
    fit.max_residual = std::max(fit.max_residual, fit.residual[i]);
  }
  return fit;
}

double average_fidelity(const ChoiMatrix& c, const std::vector<double>& alpha) {
  if (static_cast<int>(alpha.size()) != c.N)
    throw std::invalid_argument("alpha must have one weight per clone");
  const TensorOperator r = build_R_alpha(alpha, c.d, c.op.side());
  const double inner = (c.op.matrix().adjoint() * r.matrix()).trace().real();
  return inner / (double(c.d) * (c.d + 1));
}

double covariance_check(const ChoiMatrix& c, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Matrix u = haar_unitary(c.d, rng);
    TensorOperator w(c.d, 1, u.conjugate());
    for (int i = 0; i < c.N; ++i)
      w = tensor_product(w, TensorOperator(c.d, 1, u));
    const Matrix& cm = c.op.matrix();
    worst = std::max(worst, (cm * w.matrix() - w.matrix() * cm).norm());
  }
  return worst;
}

ChoiCertificate certify_choi(const std::vector<double>& beta, int d, int N,
                             std::int64_t guard) {
  const ChoiMatrix tilde = build_choi_unscaled(beta, d, N, guard);
  const ChoiMatrix c = build_choi(beta, d, N, guard);

  ChoiCertificate cert;
  cert.hermiticity_residual = hermiticity_residual(c.op);
  cert.projector_residual =
      (tilde.op.matrix() * tilde.op.matrix() - tilde.op.matrix()).norm();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(c.op.matrix(), Eigen::EigenvaluesOnly);
  cert.min_eigenvalue = solver.eigenvalues().minCoeff();

  const Matrix reduced = partial_trace(c.op, {0}).matrix();
  cert.tp_residual = (reduced - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  return cert;
}

}  // namespace cloneq
