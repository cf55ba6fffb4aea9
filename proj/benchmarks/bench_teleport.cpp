#include <benchmark/benchmark.h>

#include <complex>

#include "nmtel/teleport_cv.hpp"
#include "nmtel/teleport_dv.hpp"

using namespace nmtel;
using complexd = std::complex<double>;

static void BM_dv_protocol_point(benchmark::State& state) {
  const complexd u(0.6, 0.3);
  const dv::BlochState in{1.1, 2.2};
  for (auto _ : state) benchmark::DoNotOptimize(dv::simulate(u, in));
}
BENCHMARK(BM_dv_protocol_point);

static void BM_dv_oracle(benchmark::State& state) {
  const complexd u(0.6, 0.3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dv::oracle_avg_fidelity(u, n, n));
}
BENCHMARK(BM_dv_oracle)->Arg(16)->Arg(32);

static void BM_cv_oracle_grid(benchmark::State& state) {
  const complexd u = 0.6 * std::exp(complexd(0, 0.4));
  const cv::OracleGrid grid{8.0, static_cast<int>(state.range(0))};
  for (auto _ : state)
    benchmark::DoNotOptimize(cv::oracle_avg_fidelity(u, 1.0, complexd(0, 0), grid));
}
BENCHMARK(BM_cv_oracle_grid)->Arg(101)->Arg(201);

static void BM_cv_closed_form(benchmark::State& state) {
  complexd u(0.6, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cv::avg_fidelity(u, 2.0));
    u *= std::exp(complexd(0, 1e-3));
  }
}
BENCHMARK(BM_cv_closed_form);
