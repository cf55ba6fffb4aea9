#pragma once

// Qubit teleportation through a dissipating entangled pair.  The noisy pair
// state is an explicit function of the channel propagator u; the closed-form
// average fidelity {2 + |u|²(|u|² − 1) + Re[u²]}/3 is checked against a full
// density-matrix protocol simulation averaged over the Bloch sphere.
//
// Conventions, fixed project-wide: two-qubit basis order (ee, eg, ge, gg);
// Bell outcomes ordered (Φ+, Φ−, Ψ+, Ψ−) with corrections (I, σz, σx, −iσy).

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "nmtel/spectrum.hpp"

namespace nmtel::dv {

using complexd = std::complex<double>;

// input qubit cos(θ/2)|e⟩ + sin(θ/2)e^{iφ}|g⟩
struct BlochState {
  double theta = 0.0;
  double phi = 0.0;
  complexd amp_e() const { return std::cos(0.5 * theta); }
  complexd amp_g() const {
    return std::sin(0.5 * theta) * std::exp(complexd(0.0, phi));
  }
};

// [2 + cos(2ω0 t)]/3; equals 1 at t = nπ/ω0.
double ideal_fidelity(double omega0, double t);

// ρ₂₃(u) = ½{[P|e⟩⟨e| + (1−P)|g⟩⟨g|]⊗² + |gg⟩⟨gg| + (u²|ee⟩⟨gg| + h.c.)},
// P = |u|².  Hermitian, unit trace, PSD for all |u| <= 1.
Eigen::Matrix4cd channel_state(complexd u);

// {2 + |u|²(|u|² − 1) + Re[u²]}/3
double avg_fidelity(complexd u);

// {2 + e^{−2κt}[e^{−2κt} − 2sin²(ω0 t)]}/3 → 2/3 as t → ∞
double bma_fidelity(double kappa, double omega0, double t);

// {2 + Z²[Z² − 2sin²(E_b t)]}/3, the long-time series when a bound state with
// residue Z survives; maximum over t is (2 + Z⁴)/3.
double steady_fidelity(double residue, double bound_energy, double t);
double steady_fidelity(const spectrum::BoundState& bs, double t);
double steady_fidelity_max(double residue);

struct Outcome {
  double probability = 0.0;
  Eigen::Matrix2cd state;     // Bob's qubit after the correction
  double fidelity = 0.0;      // ⟨φ|ρ_out|φ⟩; 0 when the outcome has zero weight
};

// Bell measurement on (input, channel qubit 2), correction on qubit 3.
// Outcome order (Φ+, Φ−, Ψ+, Ψ−); probabilities sum to 1.
std::array<Outcome, 4> simulate(complexd u, const BlochState& input);

// Deterministic Bloch-sphere average of Σ_k P_k F_k from the protocol
// simulation: Gauss–Legendre in cosθ × uniform φ.  Independent route to
// avg_fidelity.
double oracle_avg_fidelity(complexd u, int n_theta = 32, int n_phi = 32);

// Monte Carlo spot check over uniform Bloch-sphere inputs; the deterministic
// quadrature is what the test suites rely on.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};
McEstimate mc_avg_fidelity(complexd u, std::size_t samples, unsigned seed = 1u);

}  // namespace nmtel::dv
