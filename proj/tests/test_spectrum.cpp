#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nmtel/spectrum.hpp"

using namespace nmtel;
using bath::SpectralDensity;

namespace {

SpectralDensity ohmic(double eta, double s, double wc) {
  return SpectralDensity{bath::OhmicFamily{eta, s, wc}};
}

SpectralDensity chain_density(double g) {
  return SpectralDensity{bath::Semicircle{g, 0.08, 1.0}};
}

}  // namespace

TEST_CASE("Y reduces to the bare frequency without coupling") {
  const auto sd = ohmic(0.0, 1.0, 10.0);
  for (double e : {-5.0, -0.3, 0.0, 2.0})
    CHECK(spectrum::y_function(sd, 1.0, e) == 1.0);
}

TEST_CASE("Y(0) has the closed form omega0 - eta omega_c Gamma(s)") {
  CHECK(spectrum::y_function(ohmic(0.2, 1.0, 10.0), 1.0, 0.0) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(spectrum::y_function(ohmic(0.2, 1.0, 4.0), 1.0, 0.0) ==
        doctest::Approx(0.2).epsilon(1e-9));
  // sub-Ohmic: Γ(1/2) = √π
  CHECK(spectrum::y_function(ohmic(0.1, 0.5, 3.0), 1.0, 0.0) ==
        doctest::Approx(1.0 - 0.1 * 3.0 * std::sqrt(std::numbers::pi))
            .epsilon(1e-8));
}

TEST_CASE("Y is monotone decreasing below the band") {
  const auto sd = ohmic(0.2, 1.0, 10.0);
  double prev = spectrum::y_function(sd, 1.0, -8.0);
  for (double e : {-4.0, -2.0, -1.0, -0.25, 0.0}) {
    const double cur = spectrum::y_function(sd, 1.0, e);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(spectrum::y_function(sd, 1.0, 0.5), std::domain_error);
}

TEST_CASE("bound-state existence across the cutoff threshold") {
  const auto below = spectrum::bound_state_exists(ohmic(0.2, 1.0, 4.0), 1.0);
  CHECK_FALSE(below.below);
  CHECK(*below.y_at_zero == doctest::Approx(0.2).epsilon(1e-8));

  const auto above = spectrum::bound_state_exists(ohmic(0.2, 1.0, 10.0), 1.0);
  CHECK(above.below);
  CHECK(*above.y_at_zero == doctest::Approx(-1.0).epsilon(1e-8));
  // the doubled-coupling indicator reported alongside: 2 Y(0) − ω0
  CHECK(*above.y_at_zero_doubled ==
        doctest::Approx(2.0 * *above.y_at_zero - 1.0).epsilon(1e-12));

  // decoupled chain: ω0 = 1.15 ωr sits inside the band [0.84, 1.16] ωr
  const auto free = spectrum::bound_state_exists(chain_density(0.0), 1.15);
  CHECK_FALSE(free.below);
  CHECK_FALSE(free.above);
}

TEST_CASE("bound state of the Ohmic bath at omega_c = 10") {
  const auto states = spectrum::find_bound_states(ohmic(0.2, 1.0, 10.0), 1.0);
  REQUIRE(states.size() == 1);
  const auto& bs = states[0];
  CHECK(bs.gap == 0);
  CHECK(bs.energy < 0.0);
  CHECK(bs.residue > 0.0);
  CHECK(bs.residue <= 1.0);
  // root certificate
  const double resid =
      spectrum::y_function(ohmic(0.2, 1.0, 10.0), 1.0, bs.energy) - bs.energy;
  CHECK(std::fabs(resid) <= 1e-10);
  // frozen reference values (regression)
  CHECK(bs.energy == doctest::Approx(-0.682284675713).epsilon(1e-8));
  CHECK(bs.residue == doctest::Approx(0.770751280681).epsilon(1e-8));

  CHECK(spectrum::find_bound_states(ohmic(0.2, 1.0, 4.0), 1.0).empty());
}

TEST_CASE("marginal bound state just above threshold") {
  const auto states = spectrum::find_bound_states(ohmic(0.2, 1.0, 5.05), 1.0);
  REQUIRE(states.size() == 1);
  CHECK(states[0].energy < 0.0);
  CHECK(states[0].energy > -0.01);
  CHECK(states[0].residue > 0.0);
  CHECK(states[0].residue < 0.55);
  const double resid =
      spectrum::y_function(ohmic(0.2, 1.0, 5.05), 1.0, states[0].energy) -
      states[0].energy;
  CHECK(std::fabs(resid) <= 1e-10);
}

TEST_CASE("chain realization: bound state above the band, Z -> 1 at weak coupling") {
  // supercritical coupling at the reference point
  const auto states = spectrum::find_bound_states(chain_density(0.1), 1.15);
  REQUIRE(states.size() == 1);
  CHECK(states[0].gap == 1);
  CHECK(states[0].energy > 1.16);
  CHECK(states[0].energy == doctest::Approx(1.2084635099).epsilon(1e-8));
  CHECK(states[0].residue == doctest::Approx(0.6956511242).epsilon(1e-8));

  // ω0 below the band keeps a bound state at any coupling, with full weight
  // recovered as g -> 0
  double prev = 0.0;
  for (double g : {0.05, 0.02, 0.005}) {
    const auto st = spectrum::find_bound_states(chain_density(g), 0.5);
    REQUIRE(st.size() == 1);
    CHECK(st[0].gap == 0);
    CHECK(st[0].residue > prev);
    prev = st[0].residue;
  }
  CHECK(prev > 0.9998);
}

TEST_CASE("spectrum sweep over the cutoff finds the onset near 5") {
  auto family = [](double wc) { return ohmic(0.2, 1.0, wc); };
  std::vector<double> grid;
  for (int i = 0; i <= 90; ++i) grid.push_back(1.0 + 0.1 * i);
  const auto sweep = spectrum::spectrum_sweep(family, 1.0, grid, 2, 1e-3);
  REQUIRE(sweep.threshold.has_value());
  CHECK(*sweep.threshold == doctest::Approx(5.0).epsilon(2e-3));
  // branch exists exactly where the existence condition holds
  for (const auto& pt : sweep.points) {
    if (pt.param < *sweep.threshold) CHECK(pt.states.empty());
    if (pt.param > *sweep.threshold + 1e-6) CHECK(pt.states.size() == 1);
    CHECK(pt.band_lo == 0.0);
    CHECK(std::isinf(pt.band_hi));
  }

  CHECK_THROWS_AS(spectrum::spectrum_sweep(family, 1.0, {}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum::spectrum_sweep(family, 1.0, {2.0, 1.0}, 1),
                  std::invalid_argument);
}

TEST_CASE("empty bound-state branch below threshold everywhere") {
  auto family = [](double wc) { return ohmic(0.2, 1.0, wc); };
  const auto sweep = spectrum::spectrum_sweep(family, 1.0, {1.0, 2.0, 3.0}, 1);
  CHECK_FALSE(sweep.threshold.has_value());
  for (const auto& pt : sweep.points) CHECK(pt.states.empty());
}

TEST_CASE("critical chain coupling against the closed form") {
  // Y(ωr + 2ξ) > ωr + 2ξ turns on at g² = ξ(ωr + 2ξ − ω0)
  auto family = [](double g) { return chain_density(g); };
  const double gc = spectrum::refine_threshold(family, 1.15, 0.0, 0.1, 1e-4);
  CHECK(gc == doctest::Approx(std::sqrt(0.08 * 0.01)).epsilon(2e-2));
  CHECK(std::fabs(gc - std::sqrt(0.08 * 0.01)) < 1e-3);

  // band edges are coupling-independent
  const auto sweep =
      spectrum::spectrum_sweep(family, 1.15, {0.0, 0.05, 0.1, 0.2}, 1);
  for (const auto& pt : sweep.points) {
    CHECK(pt.band_lo == doctest::Approx(0.84));
    CHECK(pt.band_hi == doctest::Approx(1.16));
  }
  // g = 0.2 exceeds the second (below-band) threshold g = √(ξ(ω0 − ωr + 2ξ))
  CHECK(sweep.points.back().states.size() == 2);
}
