#pragma once

// CSV emission with pinned %.12e formatting so identical inputs produce
// byte-identical files.

#include <optional>
#include <string>
#include <vector>

#include "nmtel/lattice.hpp"
#include "nmtel/propagator.hpp"
#include "nmtel/spectrum.hpp"
#include "nmtel/teleport_dv.hpp"

namespace nmtel::io {

std::string fmt(double v);  // "%.12e"

// t,re_u,im_u,abs_u[,gamma,omega]
void write_trajectory_csv(const std::string& path, const dyn::UTrajectory& traj,
                          const std::vector<dyn::MasterEqCoeffs>* coeffs = nullptr);

// param,band_lo,band_hi,E_b,Z — one row per (param, bound state); E_b and Z
// empty when a grid point has none
void write_sweep_csv(const std::string& path, const spectrum::SpectrumSweep& sweep);

// t,F_exact,F_bma,F_steady_envelope (shared by the DV and CV protocols)
void write_fidelity_csv(const std::string& path, const std::vector<double>& t,
                        const std::vector<double>& f_exact,
                        const std::vector<double>& f_bma,
                        const std::vector<double>& f_envelope);

// k,P_k,F_k
void write_outcomes_csv(const std::string& path,
                        const std::array<dv::Outcome, 4>& outcomes);

// j,E_j,weight
void write_excitation_csv(const std::string& path,
                          const lattice::ExcitationSpectrum& spec);

}  // namespace nmtel::io
