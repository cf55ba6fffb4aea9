#include "nmtel/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmtel::dyn {

namespace {

std::size_t checked_step_count(double horizon, double step) {
  if (horizon <= 0.0 || step <= 0.0)
    throw std::invalid_argument("solve_u: horizon and step must be positive");
  const double ratio = horizon / step;
  const double rounded = std::round(ratio);
  if (std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 2.0)
    throw std::invalid_argument("solve_u: horizon/step must be an integer >= 2");
  return static_cast<std::size_t>(rounded);
}

}  // namespace

UTrajectory solve_u(const bath::SpectralDensity& sd, double omega0, double horizon,
                    double step, const SolveOptions& opt) {
  const std::size_t n = checked_step_count(horizon, step);
  const double h = step;

  const auto table = bath::kernel_table(sd, h, n, opt.kernel, opt.quad);

  // structure-of-arrays views of the kernel and the solution keep the O(M²)
  // convolution loop vectorizable
  std::vector<double> kr(n + 1), ki(n + 1), ur(n + 1), ui(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    kr[j] = table[j].mu.real();
    ki[j] = table[j].mu.imag();
  }
  ur[0] = 1.0;
  ui[0] = 0.0;

  const double mu0r = kr[0], mu0i = ki[0];
  const double half_h = 0.5 * h;

  // running trapezoid convolution C_m = h Σ'' μ(t_m − t_j) u_j, C_0 = 0
  double c_re = 0.0, c_im = 0.0;

  const double* __restrict krp = kr.data();
  const double* __restrict kip = ki.data();
  double* __restrict urp = ur.data();
  double* __restrict uip = ui.data();

  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t p = m + 1;

    // F_m = −iω0 u_m − C_m
    const double fm_re = omega0 * uip[m] - c_re;
    const double fm_im = -omega0 * urp[m] - c_im;

    // interior part of the convolution at t_p (independent of u_p)
    double sr = 0.0, si = 0.0;
    for (std::size_t k = 1; k < p; ++k) {
      const double a = krp[k], b = kip[k];
      const double c = urp[p - k], d = uip[p - k];
      sr += a * c - b * d;
      si += a * d + b * c;
    }
    sr = h * (sr + 0.5 * krp[p]);  // + h/2 μ(t_p) u_0, u_0 = 1
    si = h * (si + 0.5 * kip[p]);

    // predictor (Euler), then one trapezoidal correction
    const double us_re = urp[m] + h * fm_re;
    const double us_im = uip[m] + h * fm_im;

    double cp_re = sr + half_h * (mu0r * us_re - mu0i * us_im);
    double cp_im = si + half_h * (mu0r * us_im + mu0i * us_re);
    const double fs_re = omega0 * us_im - cp_re;
    const double fs_im = -omega0 * us_re - cp_im;

    urp[p] = urp[m] + half_h * (fm_re + fs_re);
    uip[p] = uip[m] + half_h * (fm_im + fs_im);

    // refresh the endpoint contribution with the corrected value
    c_re = sr + half_h * (mu0r * urp[p] - mu0i * uip[p]);
    c_im = si + half_h * (mu0r * uip[p] + mu0i * urp[p]);
  }

  UTrajectory traj;
  traj.step = h;
  traj.scheme = "volterra-trapezoid-pc1";
  traj.kernel_evals = n + 1;
  traj.t.resize(n + 1);
  traj.u.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    traj.t[j] = static_cast<double>(j) * h;
    traj.u[j] = {ur[j], ui[j]};
  }

  if (opt.check_contraction) {
    const double mu0_abs = std::abs(table[0].mu);
    const double eps_num =
        std::min(0.5, 10.0 * h * h * std::max(1.0, mu0_abs) * std::max(1.0, horizon));
    double worst = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double a = std::abs(traj.u[j]);
      if (a > worst) {
        worst = a;
        worst_at = j;
      }
    }
    if (worst > 1.0 + eps_num)
      throw solver_instability(
          "solve_u: |u| = " + std::to_string(worst) + " at t = " +
              std::to_string(traj.t[worst_at]) + " exceeds 1 + " +
              std::to_string(eps_num),
          worst_at, worst);
  }
  return traj;
}

double markov_rate(const bath::SpectralDensity& sd, double omega0) {
  const auto sup = sd.support();
  if (!(omega0 > sup.lo && omega0 < sup.hi))
    throw std::invalid_argument(
        "markov_rate: omega0 lies outside the support of J; the Markovian decay "
        "rate is undefined");
  return std::numbers::pi * sd(omega0);
}

std::complex<double> bma_u(const bath::SpectralDensity& sd, double omega0, double t,
                           const quad::Options& opt) {
  if (t < 0.0) throw std::invalid_argument("bma_u: t must be >= 0");
  const double kappa = markov_rate(sd, omega0);
  const double shift = sd.lamb_shift(omega0, opt);
  return std::exp(std::complex<double>(-kappa * t, -(omega0 + shift) * t));
}

std::vector<MasterEqCoeffs> master_eq_coeffs(const UTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 3)
    throw std::invalid_argument("master_eq_coeffs: need at least 3 samples");
  const double h = traj.step;
  const auto& u = traj.u;

  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (std::abs(u[j]) < 1e-12)
      throw std::runtime_error(
          "master_eq_coeffs: |u| below 1e-12 at t = " + std::to_string(traj.t[j]) +
          "; coefficients are singular there");
  }

  std::vector<MasterEqCoeffs> out(n);
  auto emit = [&](std::size_t j, std::complex<double> du) {
    const std::complex<double> ratio = du / u[j];
    out[j] = MasterEqCoeffs{traj.t[j], -ratio.real(), -ratio.imag()};
  };
  emit(0, (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h));
  for (std::size_t j = 1; j + 1 < n; ++j) emit(j, (u[j + 1] - u[j - 1]) / (2.0 * h));
  emit(n - 1, (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h));
  return out;
}

AsymptoticU::AsymptoticU(const bath::SpectralDensity& sd, double omega0,
                         std::optional<spectrum::BoundState> bs,
                         AsymptoticOptions opt)
    : bs_(bs) {
  if (sd.is_zero()) return;
  const auto sup = sd.support();
  const double e_lo = sup.lo;
  double e_hi = sd.cutoff();

  // truncate unbounded supports where the remaining spectral weight can no
  // longer matter: tail(X) <= ∫_X J dE / (X − ω0)²
  if (!std::isfinite(sup.hi)) {
    double x = std::max(omega0 + 2.0, e_lo + 1.0);
    while (x < e_hi) {
      const double tail_weight =
          quad::integrate([&sd](double w) { return sd(w); }, x, e_hi,
                          quad::Options{1e-12, 1e-6, 512, false});
      const double denom = (x - omega0) * (x - omega0);
      if (tail_weight / denom < opt.tail_tol) break;
      x *= 1.5;
    }
    e_hi = std::min(e_hi, x);
  }

  // fixed Kronrod panels, at most half an oscillation of e^{−iEt_max} wide;
  // the first and last panels are refined geometrically toward the band
  // edges where J has square-root onsets
  const double width_cap = std::numbers::pi / std::max(1.0, opt.t_max);
  const double range = e_hi - e_lo;
  const std::size_t n_panels =
      std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(range / width_cap)));
  std::vector<double> edges;
  edges.reserve(n_panels + 13);
  const double w0 = range / static_cast<double>(n_panels);
  for (int k = 6; k >= 1; --k) edges.push_back(e_lo + w0 * std::pow(0.25, k));
  for (std::size_t i = 1; i < n_panels; ++i)
    edges.push_back(e_lo + w0 * static_cast<double>(i));
  for (int k = 1; k <= 6; ++k) edges.push_back(e_hi - w0 * std::pow(0.25, k));
  edges.insert(edges.begin(), e_lo);
  edges.push_back(e_hi);

  node_e_.reserve(15 * (edges.size() - 1));
  node_q_.reserve(15 * (edges.size() - 1));
  double nodes[15], weights[15];
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    quad::kronrod15_points(edges[i], edges[i + 1], nodes, weights);
    for (int k = 0; k < 15; ++k) {
      const double e = nodes[k];
      const double j = sd(e);
      if (j <= 0.0) continue;
      const double shift = sd.lamb_shift(e, opt.quad);  // cached via node table
      const double x = e - omega0 - shift;
      const double pj = std::numbers::pi * j;
      node_e_.push_back(e);
      node_q_.push_back(weights[k] * j / (x * x + pj * pj));
    }
  }
}

std::complex<double> AsymptoticU::bound_term(double t) const {
  if (!bs_) return 0.0;
  return bs_->residue * std::exp(std::complex<double>(0.0, -bs_->energy * t));
}

std::complex<double> AsymptoticU::branch_cut(double t) const {
  double re = 0.0, im = 0.0;
  const std::size_t n = node_e_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = node_e_[k] * t;
    re += node_q_[k] * std::cos(phase);
    im -= node_q_[k] * std::sin(phase);
  }
  return {re, im};
}

std::complex<double> AsymptoticU::operator()(double t) const {
  return bound_term(t) + branch_cut(t);
}

std::complex<double> asymptotic_u(const bath::SpectralDensity& sd, double omega0,
                                  std::optional<spectrum::BoundState> bs, double t,
                                  const AsymptoticOptions& opt) {
  AsymptoticOptions local = opt;
  local.t_max = std::max(opt.t_max, t);
  return AsymptoticU(sd, omega0, bs, local)(t);
}

}  // namespace nmtel::dyn
