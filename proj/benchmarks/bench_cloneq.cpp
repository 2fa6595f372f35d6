#include <benchmark/benchmark.h>

#include <vector>

#include "cloneq/cloner.hpp"
#include "cloneq/qnorm.hpp"
#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"

namespace {

std::vector<double> random_x(int n, cloneq::Rng& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
  return x;
}

void BM_lambda_max_full(benchmark::State& state) {
  const int d = 2, N = static_cast<int>(state.range(0));
  cloneq::Rng rng(1);
  const auto x = random_x(N, rng);
  const auto s = cloneq::build_S(x, d);
  for (auto _ : state)
    benchmark::DoNotOptimize(cloneq::lambda_max_full(s));
}
BENCHMARK(BM_lambda_max_full)->Arg(2)->Arg(3)->Arg(4);

void BM_lambda_max_reduced(benchmark::State& state) {
  const int d = 2, N = static_cast<int>(state.range(0));
  cloneq::Rng rng(1);
  const auto x = random_x(N, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(cloneq::lambda_max_reduced(x, d));
}
BENCHMARK(BM_lambda_max_reduced)->Arg(2)->Arg(3)->Arg(4)->Arg(16)->Arg(64);

void BM_dual_q_norm(benchmark::State& state) {
  const int d = 2, N = static_cast<int>(state.range(0));
  cloneq::Rng rng(2);
  std::vector<double> p(N);
  for (double& v : p) v = rng.uniform();
  for (auto _ : state)
    benchmark::DoNotOptimize(cloneq::dual_q_norm(p, d));
}
BENCHMARK(BM_dual_q_norm)->Arg(2)->Arg(3)->Arg(4);

void BM_build_choi(benchmark::State& state) {
  const int d = 2, N = static_cast<int>(state.range(0));
  const auto beta =
      cloneq::rescale_to_beta_normalization(std::vector<double>(N, 1.0), d);
  for (auto _ : state)
    benchmark::DoNotOptimize(cloneq::build_choi(beta, d, N));
}
BENCHMARK(BM_build_choi)->Arg(2)->Arg(3)->Arg(4);

void BM_apply_channel(benchmark::State& state) {
  const int d = 2, N = static_cast<int>(state.range(0));
  const auto beta =
      cloneq::rescale_to_beta_normalization(std::vector<double>(N, 1.0), d);
  const cloneq::CloningChannel ch(beta, d, N);
  cloneq::Rng rng(3);
  const auto psi = cloneq::haar_pure_state(d, rng);
  const cloneq::TensorOperator rho(d, 1, psi * psi.adjoint());
  for (auto _ : state)
    benchmark::DoNotOptimize(ch.apply(rho));
}
BENCHMARK(BM_apply_channel)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
