#include "nmtel/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace nmtel::lattice {

Eigen::MatrixXd single_excitation_hamiltonian(const ChainParams& p) {
  if (p.n_sites < 2) throw std::invalid_argument("chain needs N >= 2 sites");
  if (p.xi <= 0.0) throw std::invalid_argument("chain hopping must be > 0");
  if (p.g < 0.0) throw std::invalid_argument("system-chain coupling must be >= 0");

  const int dim = p.n_sites + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  h(0, 0) = p.omega0;
  h(0, 1) = h(1, 0) = p.g;
  for (int j = 1; j <= p.n_sites; ++j) h(j, j) = p.omega_r;
  for (int j = 1; j < p.n_sites; ++j) h(j, j + 1) = h(j + 1, j) = p.xi;
  return h;
}

ExcitationSpectrum diagonalize(const ChainParams& p) {
  const Eigen::MatrixXd h = single_excitation_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("lattice eigendecomposition failed");
  ExcitationSpectrum spec;
  spec.energies = solver.eigenvalues();
  spec.weights = solver.eigenvectors().row(0).array().square();
  return spec;
}

std::complex<double> exact_u_at(const ExcitationSpectrum& spec, double t) {
  double re = 0.0, im = 0.0;
  const auto n = spec.energies.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double phase = spec.energies[j] * t;
    re += spec.weights[j] * std::cos(phase);
    im -= spec.weights[j] * std::sin(phase);
  }
  return {re, im};
}

dyn::UTrajectory exact_u(const ChainParams& p, double horizon, double step) {
  if (horizon <= 0.0 || step <= 0.0)
    throw std::invalid_argument("exact_u: horizon and step must be positive");
  const auto spec = diagonalize(p);
  const auto n = static_cast<std::size_t>(std::round(horizon / step));
  dyn::UTrajectory traj;
  traj.step = step;
  traj.scheme = "lattice-eigendecomposition";
  traj.kernel_evals = 0;
  traj.t.resize(n + 1);
  traj.u.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    traj.t[k] = static_cast<double>(k) * step;
    traj.u[k] = exact_u_at(spec, traj.t[k]);
  }
  return traj;
}

double dispersion(double omega_r, double xi, double k) {
  return omega_r + 2.0 * xi * std::cos(k);
}

bath::Semicircle semicircle_density(const ChainParams& p) {
  return bath::Semicircle{p.g, p.xi, p.omega_r};
}

double revival_window(const ChainParams& p) {
  return static_cast<double>(p.n_sites) / (2.0 * p.xi);
}

}  // namespace nmtel::lattice
