#pragma once

// Coherent-state teleportation over a dissipating two-mode squeezed vacuum.
// The dissipated channel is the Gaussian kernel
//   ρ(ᾱ_f, α'_f) = a exp[b ᾱ₂ᾱ₃ + c(ᾱ₂α'₂ + ᾱ₃α'₃) + b̄ α'₂α'₃]
// with x = [1 − (1 − |u|²)² tanh²r]⁻¹, a = x cosh⁻²r, b = −x u² tanh r,
// c = x|u|²(1 − |u|²) tanh²r, and the closed-form average fidelity is
// (a/2)[1 + Re b − c]⁻¹.  The oracle re-derives the fidelity by composing the
// protocol (50:50 beam splitter, X/P homodyne projection, conditional
// displacement) as Gaussian contractions at every measurement outcome and
// integrating the outcome plane numerically.
//
// Quadrature convention throughout: X = (a + a†)/2, P = (a − a†)/(2i), so
// ⟨x|0⟩ = (2/π)^{1/4} e^{−x²}.

#include <complex>

#include "nmtel/spectrum.hpp"

namespace nmtel::cv {

using complexd = std::complex<double>;

// (½ cosh⁻²r) / (1 − tanh r cos 2ω0 t); maximum (1 + e^{−2r})⁻¹.
double ideal_fidelity(double r, double omega0, double t);

struct ChannelCoeffs {
  double a = 1.0;
  complexd b{0.0, 0.0};
  double c = 0.0;
  double x = 1.0;
  complexd u{1.0, 0.0};
  double r = 0.0;
};

ChannelCoeffs channel_coeffs(complexd u, double r);

// (a/2)[1 + Re b − c]⁻¹; the denominator is positive for every physical
// coefficient set, and the guard throws if handed one where it is not.
double fidelity_from_coeffs(const ChannelCoeffs& k);

double avg_fidelity(complexd u, double r);

// {2 + sinh(2r) e^{−2κt}[tanh r − cos(2ω0 t)]}⁻¹ → 1/2 as t → ∞
double bma_fidelity(double kappa, double omega0, double r, double t);

// {2 + sinh(2r) Z²[tanh r − cos(2E_b t)]}⁻¹; maximum [2 − Z²(1 − e^{−2r})]⁻¹.
double steady_fidelity(double residue, double bound_energy, double r, double t);
double steady_fidelity(const spectrum::BoundState& bs, double r, double t);
double steady_fidelity_max(double residue, double r);

struct OracleGrid {
  double half_width = 0.0;  // 0 → 5 + 2|α|
  int points = 201;         // per axis, >= 2
};

struct OracleResult {
  double fidelity = 0.0;
  double tail_mass = 0.0;  // |1 − ∫ P_z| over the grid; large values mean the
                           // window clipped the outcome distribution
};

// Trapezoid integration of the protocol over homodyne outcomes z = x₁ − ip₂.
// The teleported input is the coherent state |α⟩; the closed-form fidelity is
// α-independent and the oracle must reproduce that.
OracleResult oracle_avg_fidelity(complexd u, double r, complexd alpha,
                                 const OracleGrid& grid = {});

// Grid sized from the channel itself: the fidelity integrand decays like
// exp[−2(1 + Re b − c)|√2z − α|²], so the window and spacing follow from the
// coefficients instead of a fixed default.  Reaches ~1e-10 tails for any
// |u| <= 1, r <= ~3.
OracleGrid suggest_grid(complexd u, double r, complexd alpha);

}  // namespace nmtel::cv
