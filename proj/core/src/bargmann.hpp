#pragma once

// Gaussian kernel calculus over Bargmann variables, used by the CV protocol
// oracle.  A kernel is prefactor · exp(c + Σ l_i v_i + ½ Σ q_ij v_i v_j) over
// complex slots v_i; ket/bra slot pairs are contracted against the Bargmann
// measure dμ(β) = e^{−β̄β} d²β/π with the closed form
//
//   ∫ dμ(β) exp(Pβ + Qβ̄ + λ β̄β + ½σ β² + ½τ β̄²)
//     = D^{−1/2} exp{ [(1−λ)PQ + ½σQ² + ½τP²] / D },   D = (1−λ)² − στ,
//
// where P and Q are affine in the remaining slots, so one contraction is a
// rank-limited update of the quadratic form.

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nmtel::cv::detail {

using complexd = std::complex<double>;

class BargmannKernel {
 public:
  explicit BargmannKernel(int slots)
      : pref_(1.0),
        c0_(0.0),
        l_(Eigen::VectorXcd::Zero(slots)),
        q_(Eigen::MatrixXcd::Zero(slots, slots)),
        active_(slots, true) {}

  void scale(complexd factor) { pref_ *= factor; }
  void add_constant(complexd c) { c0_ += c; }
  void add_linear(int i, complexd coeff) { l_(i) += coeff; }

  // coeff · v_i v_j for i != j, coeff · v_i² for i == j
  void add_bilinear(int i, int j, complexd coeff) {
    if (i == j) {
      q_(i, i) += 2.0 * coeff;
    } else {
      q_(i, j) += coeff;
      q_(j, i) += coeff;
    }
  }

  // overlap with a quadrature eigenstate ⟨x|·⟩ on a mode that is the affine
  // combination Σ c_k v_{slot_k}:  exp(−x² + 2x s − s²/2), s the combination;
  // `momentum` selects ⟨p|·⟩: exp(−p² − 2ip s + s²/2); `conjugated` selects
  // the ket-side complex conjugate.  Prefactor (2/π)^{1/4} applied.
  void add_quadrature_overlap(double value, bool momentum, bool conjugated,
                              const std::vector<std::pair<int, double>>& mode) {
    scale(std::pow(2.0 / std::numbers::pi, 0.25));
    add_constant(-value * value);
    complexd lin = momentum ? complexd(0.0, -2.0 * value) : complexd(2.0 * value);
    complexd sq = momentum ? complexd(0.5) : complexd(-0.5);
    if (conjugated) {
      lin = std::conj(lin);
      sq = std::conj(sq);
    }
    for (const auto& [i, ci] : mode) add_linear(i, lin * ci);
    for (const auto& [i, ci] : mode)
      for (const auto& [j, cj] : mode)
        if (i <= j) add_bilinear(i, j, (i == j ? sq : 2.0 * sq) * ci * cj);
  }

  // contract the (ket, bra) slot pair against the Bargmann measure
  void integrate_pair(int ket, int bra) {
    if (!active_[ket] || !active_[bra])
      throw std::logic_error("BargmannKernel: slot already contracted");
    const complexd lambda = q_(ket, bra);
    const complexd sigma = q_(ket, ket);
    const complexd tau = q_(bra, bra);
    const complexd one_m = 1.0 - lambda;
    const complexd d = one_m * one_m - sigma * tau;
    if (std::abs(d) < 1e-300)
      throw std::runtime_error("BargmannKernel: divergent Gaussian contraction");
    if (sigma == complexd(0.0) && tau == complexd(0.0)) {
      pref_ /= one_m;
    } else {
      pref_ /= std::sqrt(d);
    }

    const complexd a = one_m / d;
    const complexd b = sigma / d;
    const complexd c = tau / d;

    const int n = static_cast<int>(l_.size());
    Eigen::VectorXcd p = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < n; ++k) {
      if (!active_[k] || k == ket || k == bra) continue;
      p(k) = q_(ket, k);
      q(k) = q_(bra, k);
    }
    const complexd p0 = l_(ket);
    const complexd q0 = l_(bra);

    c0_ += a * p0 * q0 + 0.5 * b * q0 * q0 + 0.5 * c * p0 * p0;
    for (int k = 0; k < n; ++k) {
      if (!active_[k] || k == ket || k == bra) continue;
      l_(k) += a * (p0 * q(k) + q0 * p(k)) + b * q0 * q(k) + c * p0 * p(k);
      for (int m = k; m < n; ++m) {
        if (!active_[m] || m == ket || m == bra) continue;
        const complexd dq = a * (p(k) * q(m) + q(k) * p(m)) + b * q(k) * q(m) +
                            c * p(k) * p(m);
        if (k == m) {
          q_(k, k) += dq;  // the v² part of `add` is (dq/2)·v² = ½·dq·v²
        } else {
          q_(k, m) += dq;
          q_(m, k) += dq;
        }
      }
    }
    // retire the contracted slots
    active_[ket] = active_[bra] = false;
    l_(ket) = l_(bra) = 0.0;
    q_.row(ket).setZero();
    q_.col(ket).setZero();
    q_.row(bra).setZero();
    q_.col(bra).setZero();
  }

  // prefactor · exp(exponent) at the given values of the remaining slots
  complexd evaluate(const std::vector<std::pair<int, complexd>>& values) const {
    complexd expo = c0_;
    for (const auto& [i, vi] : values) {
      expo += l_(i) * vi;
      expo += 0.5 * q_(i, i) * vi * vi;
      for (const auto& [j, vj] : values)
        if (i < j) expo += q_(i, j) * vi * vj;
    }
    return pref_ * std::exp(expo);
  }

  // prefactor · exp(constant) once every slot is contracted
  complexd closed_value() const { return pref_ * std::exp(c0_); }

 private:
  complexd pref_;
  complexd c0_;
  Eigen::VectorXcd l_;
  Eigen::MatrixXcd q_;
  std::vector<bool> active_;
};

}  // namespace nmtel::cv::detail
