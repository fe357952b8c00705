#include <benchmark/benchmark.h>

#include <random>

#include "dbar/boundary_fn.hpp"
#include "dbar/geometry.hpp"
#include "dbar/kernels.hpp"

namespace {

using dbar::cplx;
using dbar::kernels::Backend;

struct Fixture {
  dbar::CurvePtr curve;
  std::vector<cplx> tw;
  std::vector<cplx> values;
  std::vector<cplx> targets;

  explicit Fixture(int n) : curve(dbar::make_curve(dbar::DomainSpec::unit_disk(n))) {
    for (std::size_t j = 0; j < curve->size(); ++j) {
      tw.push_back(curve->tangents()[j] * curve->weights()[j]);
      values.push_back(std::exp(curve->nodes()[j]));
    }
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (std::size_t t = 0; t < curve->size(); ++t) targets.emplace_back(u(rng), u(rng));
  }
};

void BM_CauchySums(benchmark::State& state, Backend backend) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dbar::kernels::cauchy_sums(f.curve->nodes(), f.tw, f.values, f.targets, backend));
  }
  state.SetComplexityN(state.range(0));
}

void BM_PlemeljSums(benchmark::State& state, Backend backend) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dbar::kernels::plemelj_sums(f.curve->nodes(), f.tw, f.values, backend));
  }
}

void BM_HolderMax(benchmark::State& state, Backend backend) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dbar::kernels::holder_max(f.curve->nodes(), f.values, 0.5, backend));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CauchySums, serial, Backend::serial)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK_CAPTURE(BM_CauchySums, openmp, Backend::openmp)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK_CAPTURE(BM_PlemeljSums, serial, Backend::serial)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK_CAPTURE(BM_PlemeljSums, openmp, Backend::openmp)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK_CAPTURE(BM_HolderMax, serial, Backend::serial)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK_CAPTURE(BM_HolderMax, openmp, Backend::openmp)->RangeMultiplier(2)->Range(256, 2048);

BENCHMARK_MAIN();
