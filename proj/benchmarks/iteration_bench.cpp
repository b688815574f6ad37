#include <benchmark/benchmark.h>

#include "h2ror/interp.hpp"
#include "h2ror/irka.hpp"
#include "h2ror/rgd.hpp"

namespace {

using h2ror::Matrix;
using h2ror::StateSpace;

// Tridiagonal SISO chain with poles spread over [-2n, -1].
StateSpace Chain(Eigen::Index n) {
  Matrix A = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = -1.0 - 2.0 * static_cast<double>(i);
    if (i + 1 < n) {
      A(i, i + 1) = 0.5;
      A(i + 1, i) = -0.5;
    }
  }
  return StateSpace(Matrix::Identity(n, n), A, Matrix::Ones(n, 1), Matrix::Ones(1, n));
}

void BM_HermiteInterpolant(benchmark::State& state) {
  const StateSpace H = Chain(state.range(0));
  const StateSpace Hk = h2ror::default_initial_rom(state.range(1), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(h2ror::hermite_interpolant(H, Hk));
}
BENCHMARK(BM_HermiteInterpolant)->Args({50, 4})->Args({200, 6});

void BM_RgdStep(benchmark::State& state) {
  const StateSpace H = Chain(state.range(0));
  const StateSpace Hk = h2ror::default_initial_rom(state.range(1), 1, 1);
  for (auto _ : state) {
    const h2ror::GramianSet g = h2ror::compute_gramians(H, Hk);
    benchmark::DoNotOptimize(h2ror::rgd_step(H, Hk, g, 0.5));
  }
}
BENCHMARK(BM_RgdStep)->Args({50, 4})->Args({200, 6});

void BM_Irka2Example1(benchmark::State& state) {
  const StateSpace H = h2ror::example1_fom();
  const StateSpace rom0 = h2ror::default_initial_rom(2, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(h2ror::irka2(H, rom0, h2ror::RunConfig{}));
  }
}
BENCHMARK(BM_Irka2Example1)->Unit(benchmark::kMillisecond);

void BM_Irka2Chain(benchmark::State& state) {
  const StateSpace H = Chain(state.range(0));
  const StateSpace rom0 = h2ror::default_initial_rom(state.range(1), 1, 1);
  h2ror::RunConfig cfg;
  cfg.maxit = 20;
  for (auto _ : state) benchmark::DoNotOptimize(h2ror::irka2(H, rom0, cfg));
}
BENCHMARK(BM_Irka2Chain)->Args({100, 4})->Unit(benchmark::kMillisecond);

}  // namespace
