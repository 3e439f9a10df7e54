#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "jacfrac/abel.hpp"
#include "jacfrac/fracops.hpp"
#include "jacfrac/opmatrix.hpp"
#include "jacfrac/quadrature.hpp"

using namespace jacfrac;

namespace {

CoeffVector geometric(const JacobiBasis& basis, std::size_t N, double r) {
  CoeffVector c;
  c.basis = basis;
  c.coeffs.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) c.coeffs[n] = std::pow(r, (double)n);
  return c;
}

}  // namespace

static void BM_EntrySingle(benchmark::State& state) {
  const JacobiBasis basis(0, 1, 0.3, -0.2);
  std::size_t m = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(a_entry(basis, 0.5, 10 + (m % 5), 7));
    ++m;
  }
}
BENCHMARK(BM_EntrySingle);

static void BM_Assemble(benchmark::State& state) {
  const JacobiBasis basis(0, 1, 0.3, -0.2);
  const std::size_t N = (std::size_t)state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(basis, 0.5, Side::Left, N));
  }
  state.SetComplexityN((int64_t)N);
}
BENCHMARK(BM_Assemble)->Arg(8)->Arg(16)->Arg(24)->Complexity();

static void BM_AssembleLongColumns(benchmark::State& state) {
  // constant weight reroutes columns past the stability cap
  const JacobiBasis leg(0, 1, 0, 0);
  const std::size_t cols = (std::size_t)state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detail::assemble_signed(leg, 0.5, Side::Left, 17, cols));
  }
}
BENCHMARK(BM_AssembleLongColumns)->Arg(64)->Arg(256)->Arg(1024);

static void BM_GaussRule(benchmark::State& state) {
  const JacobiBasis basis(0, 1, 0.3, -0.2);
  const std::size_t N = (std::size_t)state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_jacobi(basis, N));
  }
}
BENCHMARK(BM_GaussRule)->Arg(16)->Arg(64)->Arg(256);

static void BM_AnalyzeRunge(benchmark::State& state) {
  const JacobiBasis basis(0, 1, 0, 0);
  const auto f = [](double x) {
    const double t = 2.0 * x - 1.0;
    return 1.0 / (1.0 + 25.0 * t * t);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(f, basis, 96));
  }
}
BENCHMARK(BM_AnalyzeRunge);

static void BM_Synthesize(benchmark::State& state) {
  const CoeffVector c = geometric(JacobiBasis(0, 1, 0, 0), 256, -0.97);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(c, x));
    x = (x < 0.9) ? x + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_Synthesize);

static void BM_ApplyCoeffLongOutput(benchmark::State& state) {
  const CoeffVector psi = geometric(JacobiBasis(0, 1, 0, 0), 24, -0.6);
  const std::size_t N_out = (std::size_t)state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        apply_coeff(psi, FracOrder(0.5, FracKind::Integral), Side::Left, N_out));
  }
}
BENCHMARK(BM_ApplyCoeffLongOutput)->Arg(100)->Arg(600);

static void BM_SolveRoundTrip(benchmark::State& state) {
  const CoeffVector psi = geometric(JacobiBasis(0, 1, 0, 0), 24, -0.6);
  const CoeffVector f =
      apply_coeff(psi, FracOrder(0.5, FracKind::Integral), Side::Left, 600);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(f, 0.5, 24));
  }
}
BENCHMARK(BM_SolveRoundTrip);

BENCHMARK_MAIN();
