#pragma once

// Channel propagator u(t).  Exact route: the Volterra integro-differential
// equation u̇ + iω0 u + ∫₀^t μ(t−τ) u(τ) dτ = 0, u(0) = 1, discretized with
// trapezoidal product integration and one predictor–corrector pass per step
// (second order, O(M²) total).  Weak-coupling route: the Markovian
// exponential e^{−[κ + i(ω0 + Δ)]t}.  Long-time route: bound-state pole plus
// branch-cut integral.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nmtel/spectral_density.hpp"
#include "nmtel/spectrum.hpp"

namespace nmtel::dyn {

struct UTrajectory {
  double step = 0.0;
  std::vector<double> t;                  // uniform grid, t[0] = 0
  std::vector<std::complex<double>> u;    // u[0] = 1 exactly
  std::string scheme;                     // discretization id
  std::size_t kernel_evals = 0;           // μ(x) evaluations for the table
  std::size_t size() const { return u.size(); }
};

struct SolveOptions {
  bath::KernelScheme kernel = bath::KernelScheme::Reference;
  quad::Options quad{};       // kernel quadrature (non-closed-form densities)
  bool check_contraction = true;  // enforce |u| <= 1 + eps_num
};

// Solve to horizon T with step h; T/h must be an integer >= 2.  Throws
// solver_instability when |u| exceeds 1 + eps_num with
// eps_num = min(0.5, 10 h² max(1, μ(0)) max(1, T)).
UTrajectory solve_u(const bath::SpectralDensity& sd, double omega0, double horizon,
                    double step, const SolveOptions& opt = {});

// Markovian decay rate κ = πJ(ω0); requires ω0 strictly inside the support.
double markov_rate(const bath::SpectralDensity& sd, double omega0);

// e^{−[κ + i(ω0 + Δ_{ω0})]t}
std::complex<double> bma_u(const bath::SpectralDensity& sd, double omega0, double t,
                           const quad::Options& opt = {});

struct MasterEqCoeffs {
  double t = 0.0;
  double gamma = 0.0;  // decay rate −Re[u̇/u]
  double omega = 0.0;  // renormalized frequency −Im[u̇/u]
};

// Finite-difference coefficients on the trajectory grid (centered interior,
// one-sided second order at the endpoints).  Throws when |u| < 1e-12 at an
// interior sample.
std::vector<MasterEqCoeffs> master_eq_coeffs(const UTrajectory& traj);

// Long-time decomposition u(t) ≈ Z e^{−iE_b t} + ∫ J(E) e^{−iEt} dE /
// [(E − ω0 − Δ_E)² + (πJ(E))²].  The branch-cut integrand is tabulated once
// on a fixed Kronrod panel set sized for oscillations up to t_max, with Δ_E
// cached on the nodes, so evaluation per t is a weighted sum.
struct AsymptoticOptions {
  double t_max = 100.0;
  double tail_tol = 1e-8;   // truncation bound for unbounded supports
  quad::Options quad{};     // Δ_E evaluation
};

class AsymptoticU {
 public:
  AsymptoticU(const bath::SpectralDensity& sd, double omega0,
              std::optional<spectrum::BoundState> bs, AsymptoticOptions opt = {});

  std::complex<double> operator()(double t) const;
  std::complex<double> bound_term(double t) const;
  std::complex<double> branch_cut(double t) const;
  std::size_t nodes() const { return node_e_.size(); }

 private:
  std::optional<spectrum::BoundState> bs_;
  std::vector<double> node_e_;  // branch-cut energies
  std::vector<double> node_q_;  // weight × J(E)/denominator at each node
};

// One-shot convenience for a single time.
std::complex<double> asymptotic_u(const bath::SpectralDensity& sd, double omega0,
                                  std::optional<spectrum::BoundState> bs, double t,
                                  const AsymptoticOptions& opt = {});

}  // namespace nmtel::dyn
