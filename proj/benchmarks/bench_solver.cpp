#include <benchmark/benchmark.h>

#include "nmtel/lattice.hpp"
#include "nmtel/propagator.hpp"

using namespace nmtel;

namespace {

const bath::SpectralDensity& wide_ohmic() {
  static const bath::SpectralDensity sd{bath::OhmicFamily{0.2, 1.0, 10.0}};
  return sd;
}

}  // namespace

// O(M²) product-integration cost of the Volterra solver
static void BM_solve_u(benchmark::State& state) {
  const auto steps = static_cast<double>(state.range(0));
  const double h = 1e-3;
  for (auto _ : state)
    benchmark::DoNotOptimize(dyn::solve_u(wide_ohmic(), 1.0, steps * h, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_solve_u)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity();

static void BM_asymptotic_build(benchmark::State& state) {
  const auto states = spectrum::find_bound_states(wide_ohmic(), 1.0);
  dyn::AsymptoticOptions opt;
  opt.t_max = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(dyn::AsymptoticU(wide_ohmic(), 1.0, states[0], opt));
}
BENCHMARK(BM_asymptotic_build)->Arg(25)->Arg(100);

static void BM_asymptotic_eval(benchmark::State& state) {
  const auto states = spectrum::find_bound_states(wide_ohmic(), 1.0);
  const dyn::AsymptoticU asym(wide_ohmic(), 1.0, states[0], {});
  double t = 50.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(asym(t));
    t += 0.1;
  }
}
BENCHMARK(BM_asymptotic_eval);

static void BM_lattice_exact_u(benchmark::State& state) {
  lattice::ChainParams p;
  p.n_sites = static_cast<int>(state.range(0));
  p.g = 0.1;
  const auto spec = lattice::diagonalize(p);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice::exact_u_at(spec, t));
    t += 0.5;
  }
}
BENCHMARK(BM_lattice_exact_u)->Arg(500)->Arg(2000);

static void BM_lattice_diagonalize(benchmark::State& state) {
  lattice::ChainParams p;
  p.n_sites = static_cast<int>(state.range(0));
  p.g = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(lattice::diagonalize(p));
}
BENCHMARK(BM_lattice_diagonalize)->Arg(500);
