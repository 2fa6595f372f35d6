#include <doctest.h>

#include <cmath>

#include "cloneq/qnorm.hpp"
#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"
#include "cloneq/tensor.hpp"

#include "testutil.hpp"

using namespace cloneq;
using testutil::max_abs_diff;

TEST_CASE("reduced eigenvalue matches full diagonalization") {
  Rng rng(91);
  for (auto [d, N] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}})
    for (int rep = 0; rep < 20; ++rep) {
      const auto x = testutil::random_signed(N, rng);
      const double full = lambda_max_full(build_S(x, d));
      const double reduced = lambda_max_reduced(x, d);
      CHECK(std::abs(full - reduced) < 1e-10);
    }
}

TEST_CASE("single-component operator has eigenvalue d|x|") {
  for (int d : {2, 3, 5}) {
    CHECK(lambda_max_reduced({0.7}, d) == doctest::Approx(0.7 * d).epsilon(1e-14));
    CHECK(lambda_max_reduced({-0.7}, d) == doctest::Approx(0.7 * d).epsilon(1e-14));
  }
}

TEST_CASE("eigenvalue bounds and their tightness") {
  Rng rng(92);
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 2 + int(rng.uniform() * 3);
    const int N = 1 + int(rng.uniform() * 5);
    auto x = testutil::random_signed(N, rng);
    double l1 = 0.0;
    for (double v : x) l1 += std::abs(v);
    const double lam = lambda_max_reduced(x, d);
    CHECK(lam >= l1 / d - 1e-9);
    CHECK(lam <= d * l1 + 1e-9);
  }
  // upper bound is attained exactly on (at most) one-sparse vectors
  CHECK(lambda_max_reduced({0.0, 0.3, 0.0}, 2) ==
        doctest::Approx(0.6).epsilon(1e-14));
  // and strictly missed otherwise
  const double lam = lambda_max_reduced({0.3, 0.3}, 2);
  CHECK(lam < 2 * 0.6 - 1e-3);
}

TEST_CASE("spread spectrum for two components matches the closed form") {
  Rng rng(93);
  for (int d : {2, 3, 4})
    for (int rep = 0; rep < 50; ++rep) {
      const double x1 = 2 * rng.uniform() - 1, x2 = 2 * rng.uniform() - 1;
      const double expect =
          0.5 * (d * (std::abs(x1) + std::abs(x2)) +
                 std::sqrt(double(d) * d * (std::abs(x1) - std::abs(x2)) *
                               (std::abs(x1) - std::abs(x2)) +
                           4 * std::abs(x1 * x2)));
      CHECK(lambda_max_reduced({x1, x2}, d) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("perron weights of the uniform weighting are symmetric") {
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto pr = perron_beta(std::vector<double>(N, 1.0), d);
    CHECK_FALSE(pr.degenerate);
    CHECK(std::abs(beta_normalization_residual(pr.beta, d)) < 1e-12);
    for (int i = 1; i < N; ++i)
      CHECK(pr.beta[i] == doctest::Approx(pr.beta[0]).epsilon(1e-12));
    // lambda for the uniform vector: N + d - 1 + (N - 1)/d ... checked
    // against the reduced eigenvalue directly
    CHECK(pr.lambda ==
          doctest::Approx(lambda_max_reduced(std::vector<double>(N, 1.0), d))
              .epsilon(1e-12));
  }
}

TEST_CASE("perron weights maximize the fidelity functional") {
  // <chi| S_alpha |chi> = lambda_max over the normalization surface, so any
  // other normalized weight vector scores strictly less.
  Rng rng(94);
  const int d = 2, N = 3;
  const std::vector<double> alpha{0.5, 0.3, 0.2};
  const auto pr = perron_beta(alpha, d);
  const auto score = [&](const std::vector<double>& b) {
    double s = 0.0, sum = 0.0;
    for (double v : b) sum += v;
    for (int i = 0; i < N; ++i) {
      const double si = (d - 1) * b[i] + sum;
      s += alpha[i] * si * si;
    }
    return s;
  };
  const double best = score(pr.beta);
  CHECK(best == doctest::Approx(pr.lambda).epsilon(1e-10));
  for (int rep = 0; rep < 100; ++rep) {
    const auto b = testutil::random_beta(N, d, rng);
    CHECK(score(b) <= best + 1e-10);
  }
}

TEST_CASE("degenerate weight vectors get a deterministic perron limit") {
  const auto pr = perron_beta({1.0, 1.0, 0.0}, 2);
  CHECK(pr.degenerate);
  const auto p = optimal_surface_point(pr.beta, 2);
  CHECK(p[0] == doctest::Approx(2.0 / 3).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(2.0 / 3).epsilon(1e-6));
  CHECK(p[2] == doctest::Approx(1.0 / 9).epsilon(1e-6));
}

TEST_CASE("chi vector scalar products") {
  Rng rng(95);
  for (auto [d, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto beta = testutil::random_beta(N, d, rng);
    const TensorVector chi = chi_vector(beta, d);
    CHECK(std::abs(chi.vector().squaredNorm() - 1.0) < 1e-12);
    double sum = 0.0;
    for (double b : beta) sum += b;
    for (int i = 0; i < N; ++i) {
      const TensorOperator w = omega_projector(d, N + 1, 0, i + 1);
      const double got = (chi.vector().adjoint() * w.matrix() * chi.vector())(0).real();
      const double si = (d - 1) * beta[i] + sum;
      CHECK(got == doctest::Approx(si * si).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted pair sum evaluated on chi reaches the eigenvalue") {
  Rng rng(96);
  const int d = 2, N = 2;
  const auto alpha = std::vector<double>{0.6, 0.4};
  const auto pr = perron_beta(alpha, d);
  const TensorVector chi = chi_vector(pr.beta, d);
  const TensorOperator s = build_S(alpha, d);
  const double val = (chi.vector().adjoint() * s.matrix() * chi.vector())(0).real();
  CHECK(val == doctest::Approx(pr.lambda).epsilon(1e-12));
}

TEST_CASE("R operator ties the q-norm to the fidelity bound") {
  Rng rng(97);
  for (int d : {2, 3})
    for (int rep = 0; rep < 20; ++rep) {
      const int N = 2 + int(rng.uniform() * 2);
      std::vector<double> alpha(N);
      for (double& a : alpha) a = rng.uniform();
      double l1 = 0.0;
      for (double a : alpha) l1 += a;
      // R = |alpha|_1 I + S, so the top of R splits into the two routes
      const double lam_r = lambda_max_full(build_R_alpha(alpha, d));
      CHECK(lam_r == doctest::Approx(l1 + lambda_max_reduced(alpha, d)).epsilon(1e-10));
      const double bound = lam_r / (d + 1);
      const double via_q = l1 / d + (1.0 - 1.0 / d) * q_norm(alpha, d);
      CHECK(bound == doctest::Approx(via_q).epsilon(1e-10));
    }
}

TEST_CASE("haar states average to the symmetric two-site moment") {
  // E[rho^T ⊗ rho] = (I + omega) / (d (d + 1)) for Haar pure states
  Rng rng(98);
  const int d = 2;
  const int samples = 40000;
  Matrix acc = Matrix::Zero(d * d, d * d);
  for (int s = 0; s < samples; ++s) {
    const CVector psi = haar_pure_state(d, rng);
    const Matrix rho = psi * psi.adjoint();
    acc += tensor_product(TensorOperator(d, 1, rho.transpose()),
                          TensorOperator(d, 1, rho))
               .matrix();
  }
  acc /= samples;
  const Matrix expect =
      (Matrix::Identity(d * d, d * d) + omega_projector(d, 2, 0, 1).matrix()) /
      (d * (d + 1.0));
  CHECK(max_abs_diff(acc, expect) < 8e-3);
}

TEST_CASE("haar unitaries are unitary") {
  Rng rng(99);
  for (int d : {2, 3, 5}) {
    const Matrix u = haar_unitary(d, rng);
    CHECK(max_abs_diff(u.adjoint() * u, Matrix::Identity(d, d)) < 1e-13);
  }
}

TEST_CASE("rescaling lands on the normalization surface") {
  Rng rng(100);
  for (int d : {2, 3})
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> v(3);
      for (double& x : v) x = rng.uniform() * 5;
      const auto b = rescale_to_beta_normalization(v, d);
      CHECK(std::abs(beta_normalization_residual(b, d)) < 1e-12);
    }
  CHECK_THROWS_AS(rescale_to_beta_normalization({0.0, 0.0}, 2),
                  std::invalid_argument);
}

TEST_CASE("perron rejects invalid weightings") {
  CHECK_THROWS_AS(perron_beta({-0.1, 0.5}, 2), std::invalid_argument);
  CHECK_THROWS_AS(perron_beta({0.0, 0.0}, 2), std::invalid_argument);
}
