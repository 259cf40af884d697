#include <benchmark/benchmark.h>

#include "lve/combinatorics.hpp"
#include "lve/engine.hpp"
#include "lve/kernels.hpp"
#include "lve/lattice.hpp"

using namespace lve;

namespace {

const LatticeSpec spec = make_lattice(0.25, 16.0, Boundary::dirichlet);
const ModelParams params{cdouble(1.0, 0.0), 0.05};

void bm_dense_resolvent(benchmark::State& state) {
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(1));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent(spec, params, sigma));
}
BENCHMARK(bm_dense_resolvent);

void bm_tridiag_factorization(benchmark::State& state) {
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(1));
  const LatticeOperator h = build_operator(spec, params, sigma);
  for (auto _ : state) benchmark::DoNotOptimize(TridiagResolvent(h));
}
BENCHMARK(bm_tridiag_factorization);

void bm_contract_square(benchmark::State& state) {
  const SigmaField sigma = sample_noise(spec, 1.0, RngStream(1));
  const TridiagResolvent fac(build_operator(spec, params, sigma));
  std::vector<cdouble> w(static_cast<std::size_t>(spec.n_sites), cdouble(1.0, 0.0));
  std::vector<cdouble> out;
  for (auto _ : state) {
    fac.contract_square(w, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_contract_square);

void bm_kernel_power(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_power(params, m, 0.0, 1.0));
}
BENCHMARK(bm_kernel_power)->Arg(1)->Arg(4)->Arg(8);

void bm_catalan_table(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(catalan_table(48));
}
BENCHMARK(bm_catalan_table);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
