#include <doctest.h>

#include <cmath>

#include "cloneq/cloner.hpp"
#include "cloneq/permutation.hpp"
#include "cloneq/qnorm.hpp"
#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"

#include "testutil.hpp"

using namespace cloneq;
using testutil::max_abs_diff;

TEST_CASE("one clone is the identity channel") {
  for (int d : {2, 3}) {
    const std::vector<double> beta{1.0 / std::sqrt(double(d))};
    const CloningChannel ch(beta, d, 1);
    Rng rng(121);
    const TensorOperator rho = testutil::random_state(d, rng);
    CHECK(max_abs_diff(ch.apply(rho).matrix(), rho.matrix()) < 1e-13);
    // its Choi matrix is the unnormalized pair projector
    CHECK(max_abs_diff(ch.choi().op.matrix(),
                       omega_projector(d, 2, 0, 1).matrix()) < 1e-13);
  }
}

TEST_CASE("both construction routes give the same channel") {
  Rng rng(122);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto beta = testutil::random_beta(N, d, rng);
    const CloningChannel ch(beta, d, N);
    for (int rep = 0; rep < 5; ++rep) {
      const TensorOperator rho = testutil::random_state(d, rng);
      const TensorOperator via_p = ch.apply(rho);
      const TensorOperator via_choi = channel_from_choi(ch.choi(), rho);
      CHECK(max_abs_diff(via_p.matrix(), via_choi.matrix()) < 1e-12);
    }
    // and the Choi matrix of the applied map is the stored Choi matrix
    const ChoiMatrix reassembled = choi_of_map(
        [&](const TensorOperator& e) { return ch.apply_linear(e); }, d, N);
    CHECK(max_abs_diff(reassembled.op.matrix(), ch.choi().op.matrix()) < 1e-12);
  }
}

TEST_CASE("choi certificate of random weight vectors") {
  Rng rng(123);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}})
    for (int rep = 0; rep < 10; ++rep) {
      const auto beta = testutil::random_beta(N, d, rng);
      const auto cert = certify_choi(beta, d, N);
      CHECK(cert.hermiticity_residual < 1e-12);
      CHECK(cert.projector_residual < 1e-9);
      CHECK(cert.min_eigenvalue > -1e-10);
      CHECK(cert.tp_residual < 1e-10);
    }
}

TEST_CASE("the unscaled choi matrix is a projector exactly at normalization") {
  Rng rng(124);
  const int d = 2, N = 2;
  const auto beta = testutil::random_beta(N, d, rng);
  CHECK(certify_choi(beta, d, N).projector_residual < 1e-12);

  auto scaled = beta;
  for (double& b : scaled) b *= 1.1;
  const ChoiMatrix c = build_choi_unscaled(scaled, d, N);
  const double res = (c.op.matrix() * c.op.matrix() - c.op.matrix()).norm();
  CHECK(res > 1e-3);
}

TEST_CASE("channel is trace preserving and positive on states") {
  Rng rng(125);
  for (auto [d, N] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    const auto beta = testutil::random_beta(N, d, rng);
    const CloningChannel ch(beta, d, N);
    for (int rep = 0; rep < 5; ++rep) {
      const TensorOperator rho = testutil::random_state(d, rng);
      const TensorOperator out = ch.apply(rho);
      CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
      CHECK(hermiticity_residual(out) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(out.matrix(), Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
  }
}

TEST_CASE("marginals are depolarized inputs with the surface weights") {
  Rng rng(126);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto beta = testutil::random_beta(N, d, rng);
    const CloningChannel ch(beta, d, N);
    const auto fit = fit_marginals(ch, 6, 991);
    const auto p = optimal_surface_point(beta, d);
    CHECK(fit.max_residual < 1e-10);
    for (int i = 0; i < N; ++i)
      CHECK(fit.p[i] == doctest::Approx(p[i]).epsilon(1e-9));
  }
}

TEST_CASE("uniform weights reproduce the symmetric cloner") {
  // reference construction: project rho ⊗ I onto the symmetric subspace
  Rng rng(127);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto beta =
        rescale_to_beta_normalization(std::vector<double>(N, 1.0), d);
    const CloningChannel ch(beta, d, N);
    const Matrix proj = symmetric_projector(N, d).matrix();
    const double scale = double(d) / sym_dim(N, d);
    for (int rep = 0; rep < 5; ++rep) {
      const TensorOperator rho = testutil::random_state(d, rng);
      const TensorOperator in =
          (N > 1) ? tensor_product(rho, identity(d, N - 1)) : rho;
      const Matrix expect = scale * (proj * in.matrix() * proj);
      CHECK(max_abs_diff(ch.apply(rho).matrix(), expect) < 1e-12);
    }
  }
}

TEST_CASE("weighted fidelity of the matched cloner attains the bound") {
  Rng rng(128);
  const int d = 2;
  for (int N : {2, 3})
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> alpha(N);
      for (double& a : alpha) a = 0.1 + rng.uniform();
      const auto pr = perron_beta(alpha, d);
      const ChoiMatrix c = build_choi(pr.beta, d, N);
      double l1 = 0.0;
      for (double a : alpha) l1 += a;
      const double bound = (l1 + pr.lambda) / (d + 1);
      CHECK(average_fidelity(c, alpha) == doctest::Approx(bound).epsilon(1e-10));
    }
}

TEST_CASE("mismatched weights score below the bound") {
  const int d = 2, N = 2;
  const std::vector<double> alpha{0.8, 0.2};
  const auto pr = perron_beta(alpha, d);
  const double bound = (1.0 + pr.lambda) / (d + 1);
  // a channel built for different weights cannot reach alpha's bound
  const auto other = perron_beta({0.2, 0.8}, d);
  const ChoiMatrix c = build_choi(other.beta, d, N);
  CHECK(average_fidelity(c, alpha) < bound - 1e-3);
}

TEST_CASE("choi matrices commute with collective rotations") {
  Rng rng(129);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto beta = testutil::random_beta(N, d, rng);
    const ChoiMatrix c = build_choi(beta, d, N);
    CHECK(covariance_check(c, 5, 777) < 1e-10);
  }
  // control: a non-covariant map fails the same check
  const int d = 2, N = 2;
  Matrix fixed = Matrix::Zero(tensor_side(d, N), tensor_side(d, N));
  fixed(0, 0) = 1.0;
  const ChoiMatrix bad{
      tensor_product(identity(d, 1), TensorOperator(d, N, fixed)), d, N};
  CHECK(covariance_check(bad, 5, 777) > 1e-3);
}

TEST_CASE("constructor rejects unnormalized weights and bad states") {
  CHECK_THROWS_AS(CloningChannel({1.0, 1.0}, 2, 2), std::invalid_argument);
  Rng rng(130);
  const auto beta = testutil::random_beta(2, 2, rng);
  const CloningChannel ch(beta, 2, 2);
  // wrong dimension
  CHECK_THROWS_AS(ch.apply(TensorOperator(3, 1, Matrix::Identity(3, 3) / 3.0)),
                  std::invalid_argument);
  // not unit trace
  CHECK_THROWS_AS(ch.apply(TensorOperator(2, 1, Matrix::Identity(2, 2))),
                  std::invalid_argument);
}

TEST_CASE("p_beta absorbs the symmetric projector with the mean weight") {
  // P_sym Pi_sigma = Pi_sigma P_sym = P_sym collapses the weighted sum from
  // either side, so P_sym P_beta = P_beta P_sym = mean(beta) P_sym.
  Rng rng(131);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}}) {
    const auto beta = testutil::random_beta(N, d, rng);
    double mean = 0.0;
    for (double b : beta) mean += b / N;
    const TensorOperator pb = build_p_beta(beta, d, N);
    const Matrix psym = symmetric_projector(N, d).matrix();
    CHECK(max_abs_diff(psym * pb.matrix(), mean * psym) < 1e-13);
    CHECK(max_abs_diff(pb.matrix() * psym, mean * psym) < 1e-13);
    // real in the computational basis, so transpose = adjoint
    CHECK(pb.matrix().imag().cwiseAbs().maxCoeff() < 1e-15);
  }
}
