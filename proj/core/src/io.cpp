#include "nmtel/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "nmtel/errors.hpp"

namespace nmtel::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

void write_trajectory_csv(const std::string& path, const dyn::UTrajectory& traj,
                          const std::vector<dyn::MasterEqCoeffs>* coeffs) {
  auto out = open_out(path);
  out << "t,re_u,im_u,abs_u";
  if (coeffs) out << ",gamma,omega";
  out << "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << fmt(traj.t[k]) << ',' << fmt(traj.u[k].real()) << ','
        << fmt(traj.u[k].imag()) << ',' << fmt(std::abs(traj.u[k]));
    if (coeffs)
      out << ',' << fmt((*coeffs)[k].gamma) << ',' << fmt((*coeffs)[k].omega);
    out << "\n";
  }
}

void write_sweep_csv(const std::string& path, const spectrum::SpectrumSweep& sweep) {
  auto out = open_out(path);
  out << "param,band_lo,band_hi,E_b,Z\n";
  for (const auto& pt : sweep.points) {
    const std::string head =
        fmt(pt.param) + "," + fmt(pt.band_lo) + "," + fmt(pt.band_hi);
    if (pt.states.empty()) {
      out << head << ",,\n";
      continue;
    }
    for (const auto& bs : pt.states)
      out << head << ',' << fmt(bs.energy) << ',' << fmt(bs.residue) << "\n";
  }
}

void write_fidelity_csv(const std::string& path, const std::vector<double>& t,
                        const std::vector<double>& f_exact,
                        const std::vector<double>& f_bma,
                        const std::vector<double>& f_envelope) {
  if (t.size() != f_exact.size() || t.size() != f_bma.size() ||
      t.size() != f_envelope.size())
    throw std::invalid_argument("fidelity CSV columns must have equal length");
  auto out = open_out(path);
  out << "t,F_exact,F_bma,F_steady_envelope\n";
  for (std::size_t k = 0; k < t.size(); ++k)
    out << fmt(t[k]) << ',' << fmt(f_exact[k]) << ',' << fmt(f_bma[k]) << ','
        << fmt(f_envelope[k]) << "\n";
}

void write_outcomes_csv(const std::string& path,
                        const std::array<dv::Outcome, 4>& outcomes) {
  auto out = open_out(path);
  out << "k,P_k,F_k\n";
  for (std::size_t k = 0; k < outcomes.size(); ++k)
    out << (k + 1) << ',' << fmt(outcomes[k].probability) << ','
        << fmt(outcomes[k].fidelity) << "\n";
}

void write_excitation_csv(const std::string& path,
                          const lattice::ExcitationSpectrum& spec) {
  auto out = open_out(path);
  out << "j,E_j,weight\n";
  for (Eigen::Index j = 0; j < spec.energies.size(); ++j)
    out << j << ',' << fmt(spec.energies[j]) << ',' << fmt(spec.weights[j]) << "\n";
}

}  // namespace nmtel::io
