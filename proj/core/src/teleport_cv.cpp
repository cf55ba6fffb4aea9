#include "nmtel/teleport_cv.hpp"

#include <cmath>
#include <stdexcept>

#include "bargmann.hpp"

namespace nmtel::cv {

namespace {

constexpr double kUnitDiskSlack = 1e-12;

void require_valid(complexd u, double r) {
  if (std::abs(u) > 1.0 + kUnitDiskSlack)
    throw std::domain_error("|u| > 1: the channel propagator is a contraction");
  if (r < 0.0) throw std::invalid_argument("squeezing r must be >= 0");
}

// Bargmann slots for one outcome contraction.  β/β̄ pairs resolve modes 1 and
// 2 on the bra and ket sides of ρ; the last two slots stay open as the bra
// and ket variables of Bob's mode.
enum Slot {
  kB1 = 0, kB1c, kB2, kB2c,       // bra-side resolution, modes 1 and 2
  kP1 = 4, kP1c, kP2, kP2c,       // ket-side resolution
  kOut3Bra = 8, kOut3Ket = 9,
  kSlots = 10
};

// ⟨χ| (|α⟩⟨α| ⊗ ρ₂₃) |χ⟩ as a kernel over Bob's mode, with
// |χ⟩ = V†|x₁⟩|p₂⟩ the beam-splitter-rotated homodyne projector.
detail::BargmannKernel conditional_kernel(const ChannelCoeffs& ch, complexd alpha,
                                          double x1, double p2) {
  detail::BargmannKernel k(kSlots);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // measurement bra: ⟨x₁| on (β₁+β₂)/√2, ⟨p₂| on (β₂−β₁)/√2
  k.add_quadrature_overlap(x1, false, false, {{kB1, inv_sqrt2}, {kB2, inv_sqrt2}});
  k.add_quadrature_overlap(p2, true, false, {{kB1, -inv_sqrt2}, {kB2, inv_sqrt2}});
  // measurement ket: the conjugate overlaps on the primed variables
  k.add_quadrature_overlap(x1, false, true, {{kP1c, inv_sqrt2}, {kP2c, inv_sqrt2}});
  k.add_quadrature_overlap(p2, true, true, {{kP1c, -inv_sqrt2}, {kP2c, inv_sqrt2}});

  // input projector ⟨β₁|α⟩⟨α|β'₁⟩
  k.add_constant(-std::norm(alpha));
  k.add_linear(kB1c, alpha);
  k.add_linear(kP1, std::conj(alpha));

  // dissipated channel kernel on (mode 2, mode 3)
  k.scale(ch.a);
  k.add_bilinear(kB2c, kOut3Bra, ch.b);
  k.add_bilinear(kB2c, kP2, ch.c);
  k.add_bilinear(kOut3Bra, kOut3Ket, ch.c);
  k.add_bilinear(kP2, kOut3Ket, std::conj(ch.b));

  k.integrate_pair(kB1, kB1c);
  k.integrate_pair(kB2, kB2c);
  k.integrate_pair(kP1, kP1c);
  k.integrate_pair(kP2, kP2c);
  return k;
}

}  // namespace

double ideal_fidelity(double r, double omega0, double t) {
  if (r < 0.0 || t < 0.0)
    throw std::invalid_argument("ideal_fidelity: r and t must be >= 0");
  const double ch = std::cosh(r);
  return 0.5 / (ch * ch * (1.0 - std::tanh(r) * std::cos(2.0 * omega0 * t)));
}

ChannelCoeffs channel_coeffs(complexd u, double r) {
  require_valid(u, r);
  const double p = std::norm(u);
  const double th = std::tanh(r);
  ChannelCoeffs k;
  k.u = u;
  k.r = r;
  k.x = 1.0 / (1.0 - (1.0 - p) * (1.0 - p) * th * th);
  k.a = k.x / (std::cosh(r) * std::cosh(r));
  k.b = -k.x * u * u * th;
  k.c = k.x * p * (1.0 - p) * th * th;
  return k;
}

double fidelity_from_coeffs(const ChannelCoeffs& k) {
  const double denom = 1.0 + k.b.real() - k.c;
  if (denom <= 0.0)
    throw std::domain_error("unphysical CV channel coefficients: 1 + Re b − c <= 0");
  return 0.5 * k.a / denom;
}

double avg_fidelity(complexd u, double r) {
  return fidelity_from_coeffs(channel_coeffs(u, r));
}

double bma_fidelity(double kappa, double omega0, double r, double t) {
  if (kappa < 0.0) throw std::invalid_argument("bma_fidelity: kappa must be >= 0");
  if (r < 0.0 || t < 0.0)
    throw std::invalid_argument("bma_fidelity: r and t must be >= 0");
  const double decay = std::exp(-2.0 * kappa * t);
  return 1.0 / (2.0 + std::sinh(2.0 * r) * decay *
                          (std::tanh(r) - std::cos(2.0 * omega0 * t)));
}

double steady_fidelity(double residue, double bound_energy, double r, double t) {
  const double z2 = residue * residue;
  return 1.0 / (2.0 + std::sinh(2.0 * r) * z2 *
                          (std::tanh(r) - std::cos(2.0 * bound_energy * t)));
}

double steady_fidelity(const spectrum::BoundState& bs, double r, double t) {
  return steady_fidelity(bs.residue, bs.energy, r, t);
}

double steady_fidelity_max(double residue, double r) {
  const double z2 = residue * residue;
  return 1.0 / (2.0 - z2 * (1.0 - std::exp(-2.0 * r)));
}

OracleGrid suggest_grid(complexd u, double r, complexd alpha) {
  const ChannelCoeffs ch = channel_coeffs(u, r);
  // decay rates in |w|² (w = √2z − α): the fidelity integrand carries
  // 2(1 + Re b − c), the outcome density a/(1 − c); the window must hold the
  // wider of the two and the spacing must resolve the narrower
  const double k_f = 2.0 * (1.0 + ch.b.real() - ch.c);
  const double k_p = ch.a / (1.0 - ch.c);
  const double reach = std::sqrt(25.4 / std::min(k_f, k_p));  // e^{−kR²} ~ 1e-11
  const double half = (reach + std::abs(alpha)) / std::sqrt(2.0) + 0.5;
  const double sigma_z = 1.0 / (2.0 * std::sqrt(2.0 * std::max(k_f, k_p)));
  const int points =
      std::max(201, 2 * static_cast<int>(std::ceil(half * 3.0 / sigma_z)) + 1);
  return OracleGrid{half, points};
}

OracleResult oracle_avg_fidelity(complexd u, double r, complexd alpha,
                                 const OracleGrid& grid) {
  require_valid(u, r);
  if (grid.points < 2)
    throw std::invalid_argument("oracle grid needs >= 2 points per axis");
  const double half = grid.half_width > 0.0 ? grid.half_width
                                            : 5.0 + 2.0 * std::abs(alpha);
  const int m = grid.points;
  const double step = 2.0 * half / (m - 1);
  const ChannelCoeffs ch = channel_coeffs(u, r);

  double fidelity = 0.0;
  double mass = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x1 = -half + i * step;
    const double wi = (i == 0 || i == m - 1) ? 0.5 : 1.0;
    for (int j = 0; j < m; ++j) {
      const double p2 = -half + j * step;
      const double w = wi * ((j == 0 || j == m - 1) ? 0.5 : 1.0) * step * step;

      auto kernel = conditional_kernel(ch, alpha, x1, p2);

      // Bob displaces by √2 z; fidelity against the original |α⟩ is the
      // kernel at β = α − √2 z with the coherent-state normalizer
      const complexd z(x1, -p2);
      const complexd beta = alpha - std::sqrt(2.0) * z;
      const complexd numer = kernel.evaluate(
          {{kOut3Bra, std::conj(beta)}, {kOut3Ket, beta}});
      fidelity += w * (std::exp(-std::norm(beta)) * numer).real();

      kernel.integrate_pair(kOut3Ket, kOut3Bra);  // trace → outcome density
      mass += w * kernel.closed_value().real();
    }
  }
  return OracleResult{fidelity, std::fabs(1.0 - mass)};
}

}  // namespace nmtel::cv
