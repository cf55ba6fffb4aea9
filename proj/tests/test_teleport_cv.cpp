#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nmtel/teleport_cv.hpp"

using namespace nmtel;
using complexd = std::complex<double>;
using std::numbers::pi;

namespace {

complexd random_unit_disk(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::polar(std::sqrt(unit(rng)), 2.0 * pi * unit(rng));
}

}  // namespace

TEST_CASE("ideal fidelity maxima and the unsqueezed limit") {
  for (int n = 1; n <= 3; ++n)
    CHECK(cv::ideal_fidelity(2.0, 1.0, n * pi) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-4.0))).epsilon(1e-14));
  CHECK(cv::ideal_fidelity(2.0, 1.0, pi) == doctest::Approx(0.982014).epsilon(1e-6));
  for (double t : {0.0, 0.7, 2.2})
    CHECK(cv::ideal_fidelity(0.0, 1.0, t) == doctest::Approx(0.5));
}

TEST_CASE("channel coefficients at the reference points") {
  const double r = 1.3;
  const double th = std::tanh(r);
  for (double t : {0.0, 0.6, 2.0}) {
    const auto k = cv::channel_coeffs(std::exp(complexd(0, -t)), r);
    CHECK(k.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.a == doctest::Approx(1.0 / (std::cosh(r) * std::cosh(r))).epsilon(1e-14));
    CHECK(std::abs(k.b + th * std::exp(complexd(0, -2.0 * t))) < 1e-14);
    CHECK(k.c == doctest::Approx(0.0));
  }
  const auto dead = cv::channel_coeffs(complexd(0, 0), r);
  CHECK(dead.x == doctest::Approx(std::cosh(r) * std::cosh(r)).epsilon(1e-14));
  CHECK(dead.a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(dead.b) < 1e-15);
  CHECK(dead.c == doctest::Approx(0.0));

  const auto bare = cv::channel_coeffs(complexd(0.3, 0.4), 0.0);
  CHECK(bare.x == 1.0);
  CHECK(bare.a == 1.0);
  CHECK(std::abs(bare.b) == 0.0);
  CHECK(bare.c == 0.0);

  CHECK_THROWS_AS(cv::channel_coeffs(complexd(1.1, 0), 1.0), std::domain_error);
  CHECK_THROWS_AS(cv::channel_coeffs(complexd(0.5, 0), -0.1), std::invalid_argument);
}

TEST_CASE("coefficient invariants over the unit disk") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> squeeze(0.0, 2.5);
  for (int trial = 0; trial < 200; ++trial) {
    const complexd u = random_unit_disk(rng);
    const double r = squeeze(rng);
    const auto k = cv::channel_coeffs(u, r);
    CHECK(k.x >= 1.0 - 1e-14);
    CHECK(k.a > 0.0);
    CHECK(k.c >= 0.0);
    const double f = cv::fidelity_from_coeffs(k);
    CHECK(f > 0.0);
    CHECK(f <= 1.0 + 1e-12);
  }
  // unimodular u: no thermal mixing, squeezed coherence at full strength
  for (double phase : {0.0, 0.9, 2.7}) {
    const auto k = cv::channel_coeffs(std::exp(complexd(0, phase)), 1.7);
    CHECK(k.c == doctest::Approx(0.0));
    CHECK(std::abs(k.b) == doctest::Approx(std::tanh(1.7)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form average fidelity") {
  for (double t : {0.0, 0.4, 1.9})
    CHECK(cv::avg_fidelity(std::exp(complexd(0, -t)), 1.2) ==
          doctest::Approx(cv::ideal_fidelity(1.2, 1.0, t)).epsilon(1e-14));
  CHECK(cv::avg_fidelity(complexd(0, 0), 1.7) == doctest::Approx(0.5).epsilon(1e-14));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(cv::avg_fidelity(random_unit_disk(rng), 0.0) ==
          doctest::Approx(0.5).epsilon(1e-14));

  // the guard on a doctored coefficient set
  cv::ChannelCoeffs bad;
  bad.a = 1.0;
  bad.b = complexd(-2.0, 0.0);
  bad.c = 0.5;
  CHECK_THROWS_AS(cv::fidelity_from_coeffs(bad), std::domain_error);
}

TEST_CASE("Markovian fidelity limits") {
  // κ = 0 at the revival times equals (1 + e^{−2r})⁻¹
  for (double r : {0.5, 2.0})
    for (int n = 1; n <= 2; ++n)
      CHECK(cv::bma_fidelity(0.0, 1.0, r, n * pi) ==
            doctest::Approx(1.0 / (1.0 + std::exp(-2.0 * r))).epsilon(1e-12));
  // and κ = 0 generally reduces to the ideal law
  for (double t : {0.2, 1.1, 4.4})
    CHECK(std::fabs(cv::bma_fidelity(0.0, 1.0, 2.0, t) -
                    cv::ideal_fidelity(2.0, 1.0, t)) < 1e-12);
  // coefficient route gives the same Markovian series
  for (double t : {0.5, 2.0, 8.0}) {
    const double kappa = 0.35;
    const complexd u = std::exp(complexd(-kappa * t, -t));
    CHECK(cv::bma_fidelity(kappa, 1.0, 1.4, t) ==
          doctest::Approx(cv::avg_fidelity(u, 1.4)).epsilon(1e-12));
  }
  CHECK(cv::bma_fidelity(1.0, 1.0, 2.0, 10.0) == doctest::Approx(0.5).epsilon(1e-7));
  for (double t : {0.0, 0.7, 3.0})
    CHECK(cv::bma_fidelity(0.4, 1.0, 0.0, t) == doctest::Approx(0.5));
}

TEST_CASE("a noiseless channel benefits monotonically from squeezing") {
  double prev = cv::avg_fidelity(complexd(1.0, 0.0), 0.0);
  CHECK(prev == doctest::Approx(0.5));
  for (double r = 0.25; r <= 3.0; r += 0.25) {
    const double f = cv::avg_fidelity(complexd(1.0, 0.0), r);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("steady-state fidelity from the bound state") {
  // Z = 1 recovers the ideal maximum
  CHECK(cv::steady_fidelity_max(1.0, 2.0) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-4.0))).epsilon(1e-14));
  for (double t : {0.3, 1.9})
    CHECK(cv::steady_fidelity(0.0, -0.68, 2.0, t) == doctest::Approx(0.5));
  for (double z : {0.1, 0.7, 1.0}) {
    CHECK(cv::steady_fidelity_max(z, 2.0) > 0.5);
    double best = 0.0;
    for (double t = 0.0; t < 20.0; t += 0.001)
      best = std::max(best, cv::steady_fidelity(z, -0.68, 2.0, t));
    CHECK(best == doctest::Approx(cv::steady_fidelity_max(z, 2.0)).epsilon(1e-6));
  }
  CHECK(cv::steady_fidelity_max(0.0, 2.0) == doctest::Approx(0.5));
  // exceeds the classical bound exactly when both Z > 0 and r > 0
  CHECK(cv::steady_fidelity_max(0.8, 0.0) == doctest::Approx(0.5));
  CHECK(cv::steady_fidelity_max(0.8, 0.3) > 0.5);
}

TEST_CASE("outcome-integral oracle reproduces the ideal law") {
  const double om0 = 1.0, t = 0.7, r = 1.0;
  const complexd u = std::exp(complexd(0, -om0 * t));
  for (const complexd alpha : {complexd(0, 0), complexd(1.0, 0.5)}) {
    const auto res = cv::oracle_avg_fidelity(u, r, alpha, cv::suggest_grid(u, r, alpha));
    CHECK(std::fabs(res.fidelity - cv::ideal_fidelity(r, om0, t)) <= 1e-6);
    CHECK(res.tail_mass < 1e-8);
  }
}

TEST_CASE("outcome-integral oracle equals the closed form and ignores the input") {
  const complexd u = 0.6 * std::exp(complexd(0, pi / 5));
  const double r = 1.0;
  const auto res = cv::oracle_avg_fidelity(u, r, complexd(0.3, -0.2),
                                           cv::suggest_grid(u, r, complexd(0.3, -0.2)));
  CHECK(std::fabs(res.fidelity - cv::avg_fidelity(u, r)) <= 1e-6);

  double reference = res.fidelity;
  for (const complexd alpha : {complexd(0, 0), complexd(1.0, 0.5), complexd(-0.7, 0.2)}) {
    const auto r2 = cv::oracle_avg_fidelity(u, r, alpha, cv::suggest_grid(u, r, alpha));
    CHECK(std::fabs(r2.fidelity - reference) <= 1e-6);
  }

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> squeeze(0.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const complexd uu = random_unit_disk(rng);
    const double rr = squeeze(rng);
    const auto rs = cv::oracle_avg_fidelity(uu, rr, complexd(0, 0),
                                            cv::suggest_grid(uu, rr, complexd(0, 0)));
    CHECK(std::fabs(rs.fidelity - cv::avg_fidelity(uu, rr)) <= 1e-6);
    CHECK(rs.tail_mass < 1e-8);
  }
}

TEST_CASE("coarse outcome grids are detected, not silently accepted") {
  const complexd u = 0.6 * std::exp(complexd(0, pi / 5));
  const auto res = cv::oracle_avg_fidelity(u, 1.0, complexd(0, 0), {0.0, 11});
  CHECK(std::fabs(res.fidelity - cv::avg_fidelity(u, 1.0)) > 1e-4);
  CHECK(res.tail_mass > 1e-8);
  CHECK_THROWS_AS(cv::oracle_avg_fidelity(u, 1.0, complexd(0, 0), {0.0, 1}),
                  std::invalid_argument);
}
