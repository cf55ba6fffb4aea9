#pragma once

// Single-excitation energy spectrum of one subsystem + its reservoir.
// Isolated levels outside the continuum solve Y(E) = E with
// Y(E) = ω0 − ∫ J(ω)/(ω − E) dω; Y is strictly decreasing on each gap, so a
// gap holds at most one root and a sign check at the gap edge decides
// existence.  The residue Z = [1 + ∫ J/(E_b − ω)² dω]⁻¹ is the weight the
// level keeps on the system site.

#include <functional>
#include <optional>
#include <vector>

#include "nmtel/quadrature.hpp"
#include "nmtel/spectral_density.hpp"

namespace nmtel::spectrum {

struct BoundState {
  double energy = 0.0;   // E_b, strictly outside the support of J
  double residue = 0.0;  // Z in (0, 1]
  int gap = 0;           // 0: below the support, 1: above it
};

struct RootOptions {
  double certificate_tol = 1e-10;  // on |Y(E_b) − E_b| in units of ω0
  int max_expansions = 200;
  quad::Options quad{1e-12, 1e-10, 8192, true};
};

// ω0 − ∫ J(ω)/(ω − E) dω for E outside the support (ordinary integral);
// throws std::domain_error for E strictly inside the continuum band.
double y_function(const bath::SpectralDensity& sd, double omega0, double e,
                  const quad::Options& opt = RootOptions{}.quad);

struct ExistenceReport {
  bool below = false;  // root in (−∞, support lo)
  bool above = false;  // root in (support hi, ∞); always false for unbounded support
  double margin_below = 0.0;  // Y(lo) − lo, negative iff `below`
  double margin_above = 0.0;  // Y(hi) − hi, positive iff `above`
  // Ohmic-family indicator values, reported for transparency: the integral
  // criterion actually used, and the variant with a doubled coupling weight
  // that is sometimes quoted.  Bound state below iff y_at_zero < 0.
  std::optional<double> y_at_zero;
  std::optional<double> y_at_zero_doubled;
};

ExistenceReport bound_state_exists(const bath::SpectralDensity& sd, double omega0,
                                   const RootOptions& opt = {});

// One BoundState per gap holding a root, located by bisection with geometric
// bracket expansion away from the band.
std::vector<BoundState> find_bound_states(const bath::SpectralDensity& sd,
                                          double omega0,
                                          const RootOptions& opt = {});

struct SweepPoint {
  double param = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  std::vector<BoundState> states;
};

struct SpectrumSweep {
  std::vector<SweepPoint> points;
  std::optional<double> threshold;  // first parameter with a bound state, bisected
};

using DensityFamily = std::function<bath::SpectralDensity(double)>;

// Band edges and bound states per grid point; `jobs` parallelizes over the
// grid (0 = hardware concurrency).  When the bound state appears inside the
// grid, the onset parameter is refined by bisection to `threshold_tol`.
SpectrumSweep spectrum_sweep(const DensityFamily& family, double omega0,
                             const std::vector<double>& grid,
                             unsigned jobs = 0, double threshold_tol = 1e-3,
                             const RootOptions& opt = {});

// Bisect the existence condition between a parameter without bound states
// (absent) and one with (present).
double refine_threshold(const DensityFamily& family, double omega0, double absent,
                        double present, double tol, const RootOptions& opt = {});

}  // namespace nmtel::spectrum
