#include <benchmark/benchmark.h>

#include <complex>

#include "nmtel/spectral_density.hpp"

using namespace nmtel;

static void BM_kernel_ohmic_closed_form(benchmark::State& state) {
  const bath::SpectralDensity sd{bath::OhmicFamily{0.2, 1.0, 10.0}};
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sd.memory_kernel(x));
    x += 1e-3;
  }
}
BENCHMARK(BM_kernel_ohmic_closed_form);

static void BM_kernel_semicircle_quadrature(benchmark::State& state) {
  const bath::SpectralDensity sd{bath::Semicircle{0.1, 0.08, 1.0}};
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sd.memory_kernel(x));
    x += 1e-3;
  }
}
BENCHMARK(BM_kernel_semicircle_quadrature)->Arg(1)->Arg(100);

static void BM_kernel_semicircle_bessel(benchmark::State& state) {
  const bath::Semicircle p{0.1, 0.08, 1.0};
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bath::semicircle_kernel_bessel(p, x));
    x += 1e-3;
  }
}
BENCHMARK(BM_kernel_semicircle_bessel)->Arg(1)->Arg(100);

static void BM_lamb_shift_pv(benchmark::State& state) {
  const bath::SpectralDensity sd{bath::OhmicFamily{0.2, 1.0, 10.0}};
  double e = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sd.lamb_shift(e));
    e = 0.5 + std::fmod(e, 2.0);
  }
}
BENCHMARK(BM_lamb_shift_pv);
