#pragma once

// Command-line front end: sectioned key=value config files, --section-key
// flag overrides (flags win), CSV/JSON emission.
//
// Exit codes: 0 success, 1 numerical-tolerance failure, 2 usage or config
// error, 3 IO error.

#include <complex>
#include <string>
#include <vector>

namespace nmtel::cli {

struct RunConfig {
  // [bath]
  std::string bath_kind = "ohmic";  // ohmic | semicircle | tabulated
  double eta = 0.2;
  double s = 1.0;
  double omega_c = 10.0;
  double g = 0.05;
  double xi = 0.08;
  double omega_r = 1.0;
  std::string table;  // CSV path for kind = tabulated

  // [system]
  double omega0 = 1.0;
  double r = 2.0;
  std::string protocol = "dv";  // dv | cv
  double alpha_re = 0.0;        // CV oracle input amplitude
  double alpha_im = 0.0;

  // [numerics]
  double h = 1e-3;
  double horizon = 100.0;
  double quad_abs_tol = 1e-10;
  double quad_rel_tol = 1e-8;
  long dv_nodes = 32;
  long cv_points = 201;
  double cv_half_width = 0.0;  // 0 = auto-sized from the channel
  long lattice_n = 500;
  long jobs = 0;  // 0 = hardware concurrency
  long seed = 12345;
  bool semicircle_bessel = false;  // closed-form kernel fast path

  // [sweep]
  std::string sweep_param = "omega_c";  // omega_c | g
  double sweep_from = 1.0;
  double sweep_to = 10.0;
  long sweep_count = 181;

  // [output]
  std::string out_dir = ".";
  std::string out_prefix;  // default: the command name
  bool gamma_omega = false;  // add Γ, Ω columns to trajectory CSV
};

// argv without the program name: {"u-solve", "--config", "run.cfg", ...}.
// Writes outputs and the JSON summary; returns the process exit code.
int run_cli(const std::vector<std::string>& args);

const char* usage();

}  // namespace nmtel::cli
