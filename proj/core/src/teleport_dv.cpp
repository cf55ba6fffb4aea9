#include "nmtel/teleport_dv.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nmtel/quadrature.hpp"

namespace nmtel::dv {

namespace {

constexpr double kUnitDiskSlack = 1e-12;

void require_in_disk(complexd u) {
  if (std::abs(u) > 1.0 + kUnitDiskSlack)
    throw std::domain_error("|u| > 1: the channel propagator is a contraction");
}

// Bell vectors over (q1, q2) in basis order (ee, eg, ge, gg).
const std::array<Eigen::Vector4cd, 4>& bell_basis() {
  static const std::array<Eigen::Vector4cd, 4> basis = [] {
    const double s = 1.0 / std::numbers::sqrt2;
    std::array<Eigen::Vector4cd, 4> b;
    b[0] << s, 0, 0, s;    // Φ+
    b[1] << s, 0, 0, -s;   // Φ−
    b[2] << 0, s, s, 0;    // Ψ+
    b[3] << 0, s, -s, 0;   // Ψ−
    return b;
  }();
  return basis;
}

// corrections (I, σz, σx, −iσy) matched to (Φ+, Φ−, Ψ+, Ψ−); the −i phase
// cancels in fidelities but is kept for trace with the protocol definition
const std::array<Eigen::Matrix2cd, 4>& corrections() {
  static const std::array<Eigen::Matrix2cd, 4> ops = [] {
    std::array<Eigen::Matrix2cd, 4> c;
    c[0] << 1, 0, 0, 1;
    c[1] << 1, 0, 0, -1;
    c[2] << 0, 1, 1, 0;
    c[3] << 0, -1, 1, 0;  // −iσy
    return c;
  }();
  return ops;
}

}  // namespace

double ideal_fidelity(double omega0, double t) {
  if (t < 0.0) throw std::invalid_argument("ideal_fidelity: t must be >= 0");
  return (2.0 + std::cos(2.0 * omega0 * t)) / 3.0;
}

Eigen::Matrix4cd channel_state(complexd u) {
  require_in_disk(u);
  const double p = std::norm(u);
  const complexd u2 = u * u;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = 0.5 * p * p;
  rho(1, 1) = 0.5 * p * (1.0 - p);
  rho(2, 2) = 0.5 * (1.0 - p) * p;
  rho(3, 3) = 0.5 * ((1.0 - p) * (1.0 - p) + 1.0);
  rho(0, 3) = 0.5 * u2;
  rho(3, 0) = 0.5 * std::conj(u2);
  return rho;
}

double avg_fidelity(complexd u) {
  require_in_disk(u);
  const double p = std::norm(u);
  return (2.0 + p * (p - 1.0) + (u * u).real()) / 3.0;
}

double bma_fidelity(double kappa, double omega0, double t) {
  if (kappa < 0.0 || t < 0.0)
    throw std::invalid_argument("bma_fidelity: kappa and t must be >= 0");
  const double decay = std::exp(-2.0 * kappa * t);
  const double sn = std::sin(omega0 * t);
  return (2.0 + decay * (decay - 2.0 * sn * sn)) / 3.0;
}

double steady_fidelity(double residue, double bound_energy, double t) {
  const double z2 = residue * residue;
  const double sn = std::sin(bound_energy * t);
  return (2.0 + z2 * (z2 - 2.0 * sn * sn)) / 3.0;
}

double steady_fidelity(const spectrum::BoundState& bs, double t) {
  return steady_fidelity(bs.residue, bs.energy, t);
}

double steady_fidelity_max(double residue) {
  const double z2 = residue * residue;
  return (2.0 + z2 * z2) / 3.0;
}

std::array<Outcome, 4> simulate(complexd u, const BlochState& input) {
  require_in_disk(u);
  const Eigen::Matrix4cd rho23 = channel_state(u);

  Eigen::Vector2cd phi;
  phi << input.amp_e(), input.amp_g();
  const Eigen::Matrix2cd rho1 = phi * phi.adjoint();

  std::array<Outcome, 4> outcomes;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd& bell = bell_basis()[k];
    // ⟨Bell_k| (ρ₁ ⊗ ρ₂₃) |Bell_k⟩ contracted over qubits (1, 2); the Bell
    // amplitude for (i1, i2) multiplies the channel block (i2, ·; j2, ·)
    Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2) {
            const complexd amp =
                std::conj(bell[2 * i1 + i2]) * bell[2 * j1 + j2] * rho1(i1, j1);
            if (amp == complexd(0.0)) continue;
            for (int i3 = 0; i3 < 2; ++i3)
              for (int j3 = 0; j3 < 2; ++j3)
                cond(i3, j3) += amp * rho23(2 * i2 + i3, 2 * j2 + j3);
          }

    Outcome& out = outcomes[k];
    out.probability = cond.trace().real();
    if (out.probability < 1e-14) {
      out.probability = std::max(out.probability, 0.0);
      out.state = Eigen::Matrix2cd::Zero();
      out.fidelity = 0.0;
      continue;
    }
    const Eigen::Matrix2cd& fix = corrections()[k];
    out.state = (fix * cond * fix.adjoint()) / out.probability;
    out.fidelity = (phi.adjoint() * out.state * phi).value().real();
  }
  return outcomes;
}

McEstimate mc_avg_fidelity(complexd u, std::size_t samples, unsigned seed) {
  if (samples < 2)
    throw std::invalid_argument("mc_avg_fidelity: need at least 2 samples");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    // uniform on the sphere: cosθ uniform in [−1, 1]
    const double theta = std::acos(1.0 - 2.0 * unit(rng));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const auto outcomes = simulate(u, BlochState{theta, phi});
    double f = 0.0;
    for (const auto& o : outcomes) f += o.probability * o.fidelity;
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - mean * mean) / (n - 1.0));
  return McEstimate{mean, std::sqrt(var), samples};
}

double oracle_avg_fidelity(complexd u, int n_theta, int n_phi) {
  if (n_theta < 8 || n_phi < 8)
    throw std::invalid_argument("oracle_avg_fidelity: need >= 8 nodes per axis");
  const auto gl = quad::gauss_legendre(n_theta);

  // ∫₀^π sinθ/(4π) dθ ∫₀^{2π} dφ → Σ_i w_i Σ_j f(θ_i, φ_j) / (2 n_φ)
  double acc = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(gl.nodes[i]);
    double row = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      const auto outcomes = simulate(u, BlochState{theta, phi});
      double f = 0.0;
      for (const auto& o : outcomes) f += o.probability * o.fidelity;
      row += f;
    }
    acc += gl.weights[i] * row;
  }
  return acc / (2.0 * n_phi);
}

}  // namespace nmtel::dv
