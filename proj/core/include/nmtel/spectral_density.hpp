#pragma once

// Bath spectral densities J(ω): the exponential-cutoff power-law family, the
// semicircle band of a nearest-neighbour resonator chain, and tabulated data.
// Provides the complex memory kernel μ(x) = ∫ J(ω) e^{−iωx} dω and the
// principal-value frequency shift Δ(E) = P∫ J(ω)/(E − ω) dω used by the
// propagator and spectrum modules.
//
// Units: the system frequency sets the scale (ω0 = 1); frequencies are
// multiples of ω0, times multiples of 1/ω0, J carries ω0, μ carries ω0².

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "nmtel/quadrature.hpp"

namespace nmtel::bath {

// J(ω) = η ω^s ωc^{1−s} e^{−ω/ωc} on (0, ∞).  s = 1 is the Ohmic point,
// s < 1 sub-Ohmic, s > 1 super-Ohmic.
struct OhmicFamily {
  double eta = 0.2;
  double s = 1.0;
  double omega_c = 10.0;
};

// J(ω) = g²/(2πξ²) √(4ξ² − (ω − ωr)²) on [ωr − 2ξ, ωr + 2ξ]; the spectral
// density of a semi-infinite chain of resonators with hopping ξ coupled to
// the system through its first site with strength g.
struct Semicircle {
  double g = 0.05;
  double xi = 0.08;
  double omega_r = 1.0;
};

// Sampled density, linearly interpolated between sorted nodes. Zero outside
// [omega.front(), omega.back()].
struct Tabulated {
  std::vector<double> omega;
  std::vector<double> j;
};

struct Support {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

// One sample of the memory kernel; μ(0) is real and equals ∫ J dω, and
// μ(−x) = conj(μ(x)).
struct KernelSample {
  double x = 0.0;
  std::complex<double> mu;
};

class SpectralDensity {
 public:
  explicit SpectralDensity(OhmicFamily p);
  explicit SpectralDensity(Semicircle p);
  explicit SpectralDensity(Tabulated p);  // validates sortedness, J >= 0, finite weight

  // Two-column CSV, header line "omega,J" required.
  static SpectralDensity from_csv(const std::string& path);

  // J(ω); total function, exactly zero outside the support.
  double operator()(double omega) const noexcept;

  Support support() const noexcept;

  // Finite integration bound: the Ohmic family is truncated where the
  // exponential cutoff drops below 1e-16, compact supports end at their edge.
  double cutoff() const noexcept;

  bool is_zero() const noexcept;

  // ∫ J(ω) dω by quadrature (trapezoid on the grid for tabulated data).
  double total_weight(const quad::Options& opt = {}) const;

  // μ(x) = ∫ J(ω) e^{−iωx} dω, x >= 0.  Closed form for the power-law
  // family, adaptive quadrature otherwise.
  std::complex<double> memory_kernel(double x, const quad::Options& opt = {}) const;

  // Δ(E) = P∫ J(ω)/(E − ω) dω over the support; a principal value when E is
  // inside, an ordinary integral when outside.  Computed by singularity
  // subtraction.  Throws singular_endpoint_error when E sits exactly on a
  // support endpoint where J does not vanish.
  double lamb_shift(double e, const quad::Options& opt = {}) const;

  // ∫ J(ω) f(ω) dω for f without singularities inside the support.  The
  // semicircle form integrates in ω = ωr + 2ξcosθ, which absorbs the
  // square-root band edges; tabulated data uses the sample-grid trapezoid.
  double weighted(const std::function<double(double)>& f,
                  const quad::Options& opt = {}) const;
  std::complex<double> weighted_c(
      const std::function<std::complex<double>(double)>& f,
      const quad::Options& opt = {}) const;

  const OhmicFamily* ohmic() const noexcept;
  const Semicircle* semicircle() const noexcept;
  const Tabulated* tabulated() const noexcept;

 private:
  std::variant<OhmicFamily, Semicircle, Tabulated> form_;
};

// Closed-form semicircle kernel g² e^{−iωr x} · 2 J₁(2ξx)/(2ξx) (J₁ the
// Bessel function).  Optional fast path; the quadrature kernel is the
// reference and the tests gate this form against it.
std::complex<double> semicircle_kernel_bessel(const Semicircle& p, double x);

// Kernel table μ(j·h), j = 0..n, for the Volterra solver.
enum class KernelScheme { Reference, SemicircleBessel };
std::vector<KernelSample> kernel_table(const SpectralDensity& sd, double h,
                                       std::size_t n,
                                       KernelScheme scheme = KernelScheme::Reference,
                                       const quad::Options& opt = {});

}  // namespace nmtel::bath
