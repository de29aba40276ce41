// Serial reference vs OpenMP kernels. Pairs of benchmarks share inputs, so
// their ratio is the parallel speedup on this machine.

#include <benchmark/benchmark.h>

#include "grassgeo/instances.hpp"
#include "grassgeo/verify.hpp"

using namespace grassgeo;

namespace {

struct GrassmannPath {
  Projection p;
  TangentVector z;
};

GrassmannPath make_path(std::size_t n) {
  Rng rng(derive_seed(7, "bench.path", n, 0));
  Projection p = random_context(n, rng);
  TangentVector z = random_tangent(p, 1.2, rng);
  return {std::move(p), std::move(z)};
}

void grassmann_length(benchmark::State& state, bool parallel) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GrassmannPath path = make_path(n);
  const Curve curve{[&](double t) { return geodesic(path.p, path.z, t).mat(); }, 2000};
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? curve_length(curve) : curve_length_serial(curve));
  }
}

void BM_CurveLengthSerial(benchmark::State& state) { grassmann_length(state, false); }
void BM_CurveLengthParallel(benchmark::State& state) { grassmann_length(state, true); }
BENCHMARK(BM_CurveLengthSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CurveLengthParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void cone_length(benchmark::State& state, bool parallel) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(derive_seed(7, "bench.cone", n, 0));
  const Projection p = random_context(n, rng);
  const PositiveEpsUnitary mu = random_pos_eps_unitary(p, 1.0, rng);
  const PositiveEpsUnitary nu = random_pos_eps_unitary(p, 1.0, rng);
  const auto sample = [&](double t) { return eps_geodesic(mu, nu, t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? cone_curve_length(sample, 2000) : cone_curve_length_serial(sample, 2000));
  }
}

void BM_ConeLengthSerial(benchmark::State& state) { cone_length(state, false); }
void BM_ConeLengthParallel(benchmark::State& state) { cone_length(state, true); }
BENCHMARK(BM_ConeLengthSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ConeLengthParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

RunConfig small_run() {
  RunConfig cfg;
  cfg.seed = 1;
  cfg.trials = 5;
  return cfg;
}

void BM_VerifySerial(benchmark::State& state) {
  const RunConfig cfg = small_run();
  for (auto _ : state) benchmark::DoNotOptimize(run_verify_serial(cfg));
}
void BM_VerifyParallel(benchmark::State& state) {
  const RunConfig cfg = small_run();
  for (auto _ : state) benchmark::DoNotOptimize(run_verify(cfg));
}
BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_HermitianEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(derive_seed(7, "bench.eig", n, 0));
  const ComplexMatrix a = random_hermitian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8)->Arg(16);

void BM_OpNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(derive_seed(7, "bench.norm", n, 0));
  const ComplexMatrix a = random_hermitian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(a));
}
BENCHMARK(BM_OpNorm)->Arg(4)->Arg(8)->Arg(16);

void BM_ExpAntiHermitian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(derive_seed(7, "bench.exp", n, 0));
  const ComplexMatrix z = cplx(0.0, 1.0) * random_hermitian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exp_m(z));
}
BENCHMARK(BM_ExpAntiHermitian)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
