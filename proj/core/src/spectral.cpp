#include "cloneq/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace cloneq {

namespace {

void check_weight_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("weight vector must be nonempty");
}

}  // namespace

TensorOperator build_S(const std::vector<double>& x, int d, std::int64_t guard) {
  check_weight_count(x.size());
  const int N = static_cast<int>(x.size());
  const std::int64_t side = tensor_side(d, N + 1, guard);
  Matrix sum = Matrix::Zero(side, side);
  for (int i = 0; i < N; ++i) {
    const double w = std::abs(x[i]);
    if (w == 0.0) continue;
    sum += w * omega_projector(d, N + 1, 0, i + 1, guard).matrix();
  }
  return TensorOperator(d, N + 1, std::move(sum), guard);
}

TensorOperator build_R_alpha(const std::vector<double>& alpha, int d,
                             std::int64_t guard) {
  check_weight_count(alpha.size());
  double l1 = 0.0;
  for (double a : alpha) l1 += std::abs(a);
  TensorOperator s = build_S(alpha, d, guard);
  Matrix m = s.matrix();
  m += l1 * Matrix::Identity(s.side(), s.side());
  return TensorOperator(d, s.sites(), std::move(m), guard);
}

double lambda_max_full(const TensorOperator& m) {
  const double scale = std::max(1.0, m.matrix().cwiseAbs().maxCoeff());
  if (hermiticity_residual(m) > 1e-12 * scale)
    throw std::invalid_argument("matrix is not Hermitian within 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

Eigen::MatrixXd reduced_s_plus(const std::vector<double>& x, int d) {
  check_weight_count(x.size());
  const int N = static_cast<int>(x.size());
  Eigen::MatrixXd m(N, N);
  for (int i = 0; i < N; ++i) {
    const double w = std::abs(x[i]);
    for (int j = 0; j < N; ++j) m(i, j) = (i == j) ? d * w : w;
  }
  return m;
}

double lambda_max_reduced(const std::vector<double>& x, int d) {
  check_weight_count(x.size());
  std::vector<double> supp;
  for (double v : x)
    if (std::abs(v) > 0.0) supp.push_back(std::abs(v));
  const int k = static_cast<int>(supp.size());
  if (k == 0) return 0.0;

  // symmetric similarity: same spectrum as the row-pattern reduction
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m(i, j) = std::sqrt(supp[i] * supp[j]) + (i == j ? (d - 1) * supp[i] : 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double beta_normalization_residual(const std::vector<double>& beta, int d) {
  check_weight_count(beta.size());
  double s = 0.0, s2 = 0.0;
  for (double b : beta) {
    s += b;
    s2 += b * b;
  }
  return (d - 1) * s2 + s * s - 1.0;
}

std::vector<double> rescale_to_beta_normalization(std::vector<double> v, int d) {
  check_weight_count(v.size());
  double s = 0.0, s2 = 0.0;
  for (double b : v) {
    s += b;
    s2 += b * b;
  }
  const double quad = (d - 1) * s2 + s * s;
  if (quad <= 0.0)
    throw std::invalid_argument("zero direction cannot be normalized");
  const double t = 1.0 / std::sqrt(quad);
  for (double& b : v) b *= t;
  return v;
}

PerronResult perron_beta(const std::vector<double>& alpha, int d) {
  check_weight_count(alpha.size());
  const int N = static_cast<int>(alpha.size());
  bool has_zero = false;
  double l1 = 0.0;
  for (double a : alpha) {
    if (a < 0.0) throw std::invalid_argument("alpha must be nonnegative");
    if (a == 0.0) has_zero = true;
    l1 += a;
  }
  if (l1 == 0.0) throw std::invalid_argument("alpha must not be all zero");

  PerronResult res;
  res.degenerate = has_zero;
  res.lambda = lambda_max_reduced(alpha, d);

  // Degenerate directions are defined by the limit along alpha + eps*1.
  std::vector<double> a = alpha;
  if (has_zero)
    for (double& v : a) v += 1e-9;

  Eigen::MatrixXd m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      m(i, j) = std::sqrt(a[i] * a[j]) + (i == j ? (d - 1) * a[i] : 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  Eigen::VectorXd u = solver.eigenvectors().col(N - 1);
  if (u.sum() < 0.0) u = -u;

  std::vector<double> beta(N);
  for (int i = 0; i < N; ++i) beta[i] = std::sqrt(a[i]) * u[i];
  res.beta = rescale_to_beta_normalization(std::move(beta), d);
  return res;
}

TensorVector chi_vector(const std::vector<double>& beta, int d, std::int64_t guard) {
  check_weight_count(beta.size());
  const int N = static_cast<int>(beta.size());
  const std::int64_t side = tensor_side(d, N + 1, guard);

  const std::int64_t rest_len = tensor_side(d, N - 1, guard);
  CVector uniform = CVector::Constant(rest_len, 1.0 / std::sqrt(double(rest_len)));
  TensorVector rest(d, N - 1, std::move(uniform), guard);

  CVector chi = CVector::Zero(side);
  for (int i = 0; i < N; ++i) {
    if (beta[i] == 0.0) continue;
    chi += beta[i] * omega_embed(d, N + 1, 0, i + 1, rest, guard).vector();
  }
  return TensorVector(d, N + 1, std::move(chi), guard);
}

}  // namespace cloneq
