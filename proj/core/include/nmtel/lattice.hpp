#pragma once

// Exact single-excitation treatment of a two-level system (or resonator mode)
// coupled with strength g to the first site of an N-site chain of resonators
// with nearest-neighbour hopping ξ.  The chain realizes the semicircle
// spectral density with band ωr ± 2ξ; full diagonalization of the bordered
// tridiagonal Hamiltonian gives an approximation-free oracle for u(t), the
// bound-state energy, and its weight at finite N.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "nmtel/propagator.hpp"

namespace nmtel::lattice {

struct ChainParams {
  int n_sites = 500;     // N >= 2
  double omega_r = 1.0;  // resonator frequency
  double xi = 0.08;      // nearest-neighbour hopping, > 0
  double omega0 = 1.15;  // system frequency
  double g = 0.05;       // system–site-1 coupling, >= 0
};

// Basis order: (system, site 1, ..., site N).
Eigen::MatrixXd single_excitation_hamiltonian(const ChainParams& p);

struct ExcitationSpectrum {
  Eigen::VectorXd energies;  // ascending, length N+1
  Eigen::VectorXd weights;   // |⟨system|eigenvector⟩|², sums to 1
};

ExcitationSpectrum diagonalize(const ChainParams& p);

// u(t) = Σ_j |x_j|² e^{−iE_j t} from the eigendecomposition.
std::complex<double> exact_u_at(const ExcitationSpectrum& spec, double t);

// Sampled trajectory on a uniform grid.  Finite-size echoes return to the
// system after t ≈ N/(2ξ) (maximal group velocity 2ξ); comparisons against
// the continuum solver are only meaningful before that.
dyn::UTrajectory exact_u(const ChainParams& p, double horizon, double step);

// ω_k = ωr + 2ξ cos k, k ∈ [0, π]; bandwidth 4ξ.
double dispersion(double omega_r, double xi, double k);

// equivalent continuum description of the chain reservoir
bath::Semicircle semicircle_density(const ChainParams& p);

double revival_window(const ChainParams& p);  // N/(2ξ)

}  // namespace nmtel::lattice
