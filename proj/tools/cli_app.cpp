#include "cli_app.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "nmtel/errors.hpp"
#include "nmtel/io.hpp"
#include "nmtel/lattice.hpp"
#include "nmtel/parallel.hpp"
#include "nmtel/propagator.hpp"
#include "nmtel/spectral_density.hpp"
#include "nmtel/spectrum.hpp"
#include "nmtel/teleport_cv.hpp"
#include "nmtel/teleport_dv.hpp"

namespace nmtel::cli {

namespace {

using json = nlohmann::ordered_json;
using complexd = std::complex<double>;

struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- key table

struct KeyRef {
  std::variant<double*, long*, bool*, std::string*> slot;
};

std::map<std::string, KeyRef> key_table(RunConfig& c) {
  return {
      {"bath.kind", {&c.bath_kind}},
      {"bath.eta", {&c.eta}},
      {"bath.s", {&c.s}},
      {"bath.omega_c", {&c.omega_c}},
      {"bath.g", {&c.g}},
      {"bath.xi", {&c.xi}},
      {"bath.omega_r", {&c.omega_r}},
      {"bath.table", {&c.table}},
      {"system.omega0", {&c.omega0}},
      {"system.r", {&c.r}},
      {"system.protocol", {&c.protocol}},
      {"system.alpha_re", {&c.alpha_re}},
      {"system.alpha_im", {&c.alpha_im}},
      {"numerics.h", {&c.h}},
      {"numerics.horizon", {&c.horizon}},
      {"numerics.quad_abs_tol", {&c.quad_abs_tol}},
      {"numerics.quad_rel_tol", {&c.quad_rel_tol}},
      {"numerics.dv_nodes", {&c.dv_nodes}},
      {"numerics.cv_points", {&c.cv_points}},
      {"numerics.cv_half_width", {&c.cv_half_width}},
      {"numerics.lattice_n", {&c.lattice_n}},
      {"numerics.jobs", {&c.jobs}},
      {"numerics.seed", {&c.seed}},
      {"numerics.semicircle_bessel", {&c.semicircle_bessel}},
      {"sweep.param", {&c.sweep_param}},
      {"sweep.from", {&c.sweep_from}},
      {"sweep.to", {&c.sweep_to}},
      {"sweep.count", {&c.sweep_count}},
      {"output.dir", {&c.out_dir}},
      {"output.prefix", {&c.out_prefix}},
      {"output.gamma_omega", {&c.gamma_omega}},
  };
}

const std::map<std::string, std::string>& flag_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"kind", "bath.kind"},         {"eta", "bath.eta"},
      {"s", "bath.s"},               {"omega-c", "bath.omega_c"},
      {"g", "bath.g"},               {"xi", "bath.xi"},
      {"omega-r", "bath.omega_r"},   {"table", "bath.table"},
      {"omega0", "system.omega0"},   {"r", "system.r"},
      {"protocol", "system.protocol"}, {"alpha-re", "system.alpha_re"},
      {"alpha-im", "system.alpha_im"}, {"h", "numerics.h"},
      {"horizon", "numerics.horizon"}, {"jobs", "numerics.jobs"},
      {"seed", "numerics.seed"},
  };
  return aliases;
}

std::string trim(std::string s) {
  const auto issp = [](unsigned char ch) { return std::isspace(ch); };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

void assign(RunConfig& cfg, const std::string& dotted, const std::string& value) {
  auto table = key_table(cfg);
  const auto it = table.find(dotted);
  if (it == table.end()) throw config_error("unknown configuration key: " + dotted);
  std::visit(
      [&](auto* slot) {
        using T = std::remove_pointer_t<decltype(slot)>;
        if constexpr (std::is_same_v<T, std::string>) {
          *slot = value;
        } else if constexpr (std::is_same_v<T, bool>) {
          if (value == "true" || value == "1") *slot = true;
          else if (value == "false" || value == "0") *slot = false;
          else throw config_error("boolean key " + dotted + " got '" + value + "'");
        } else {
          std::istringstream in(value);
          T parsed{};
          char extra = 0;
          if (!(in >> parsed) || (in >> extra))
            throw config_error("cannot parse value '" + value + "' for " + dotted);
          *slot = parsed;
        }
      },
      it->second.slot);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(path + ":" + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw config_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    assign(cfg, section + "." + trim(line.substr(0, eq)),
           trim(line.substr(eq + 1)));
  }
}

// --section-key (dashes to underscores after the section) or an alias
std::string resolve_flag(const std::string& name) {
  static const std::vector<std::string> sections = {"bath", "system", "numerics",
                                                    "sweep", "output"};
  for (const auto& sec : sections) {
    if (name.rfind(sec + "-", 0) == 0) {
      std::string key = name.substr(sec.size() + 1);
      std::replace(key.begin(), key.end(), '-', '_');
      return sec + "." + key;
    }
  }
  const auto it = flag_aliases().find(name);
  if (it != flag_aliases().end()) return it->second;
  throw config_error("unknown flag: --" + name);
}

json config_echo(const RunConfig& cfg) {
  RunConfig& c = const_cast<RunConfig&>(cfg);
  json out;
  for (const auto& [dotted, ref] : key_table(c)) {
    const auto dot = dotted.find('.');
    const std::string sec = dotted.substr(0, dot);
    const std::string key = dotted.substr(dot + 1);
    std::visit([&](auto* slot) { out[sec][key] = *slot; }, ref.slot);
  }
  return out;
}

// ------------------------------------------------------------ends of plumbing

bath::SpectralDensity make_density(const RunConfig& cfg) {
  if (cfg.bath_kind == "ohmic")
    return bath::SpectralDensity{bath::OhmicFamily{cfg.eta, cfg.s, cfg.omega_c}};
  if (cfg.bath_kind == "semicircle")
    return bath::SpectralDensity{bath::Semicircle{cfg.g, cfg.xi, cfg.omega_r}};
  if (cfg.bath_kind == "tabulated") {
    if (cfg.table.empty())
      throw config_error("bath.kind = tabulated requires bath.table = <csv path>");
    return bath::SpectralDensity::from_csv(cfg.table);
  }
  throw config_error("unknown bath.kind: " + cfg.bath_kind);
}

quad::Options quad_options(const RunConfig& cfg) {
  quad::Options opt;
  opt.abs_tol = cfg.quad_abs_tol;
  opt.rel_tol = cfg.quad_rel_tol;
  return opt;
}

dyn::SolveOptions solve_options(const RunConfig& cfg) {
  dyn::SolveOptions opt;
  opt.kernel = cfg.semicircle_bessel ? bath::KernelScheme::SemicircleBessel
                                     : bath::KernelScheme::Reference;
  opt.quad = quad_options(cfg);
  return opt;
}

std::string out_path(const RunConfig& cfg, const std::string& command,
                     const std::string& suffix) {
  std::string prefix = cfg.out_prefix;
  if (prefix.empty()) {
    prefix = command;
    std::replace(prefix.begin(), prefix.end(), '-', '_');
  }
  return cfg.out_dir + "/" + prefix + "_" + suffix;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open output file: " + path);
  out << doc.dump(2) << "\n";
}

json bound_state_json(const std::vector<spectrum::BoundState>& states) {
  json branch = json::array();
  for (const auto& bs : states)
    branch.push_back({{"E_b", bs.energy}, {"Z", bs.residue}, {"gap", bs.gap}});
  return branch;
}

struct CheckList {
  json entries = json::array();
  bool all_pass = true;
  void add(const std::string& name, double value, double tolerance) {
    const bool pass = value <= tolerance;
    all_pass = all_pass && pass;
    entries.push_back({{"name", name},
                       {"pass", pass},
                       {"value", value},
                       {"tolerance", tolerance}});
    std::cout << (pass ? "[ok]   " : "[FAIL] ") << name << ": " << value
              << " (tol " << tolerance << ")\n";
  }
};

double wall_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --------------------------------------------------------------- u-solve

int cmd_u_solve(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sd = make_density(cfg);

  const auto t_solve = std::chrono::steady_clock::now();
  const auto traj = dyn::solve_u(sd, cfg.omega0, cfg.horizon, cfg.h,
                                 solve_options(cfg));
  const double solve_s = wall_since(t_solve);

  std::vector<dyn::MasterEqCoeffs> coeffs;
  if (cfg.gamma_omega) coeffs = dyn::master_eq_coeffs(traj);
  io::write_trajectory_csv(out_path(cfg, "u-solve", "trajectory.csv"), traj,
                           cfg.gamma_omega ? &coeffs : nullptr);

  const auto existence = spectrum::bound_state_exists(sd, cfg.omega0);
  const auto states = spectrum::find_bound_states(sd, cfg.omega0);

  json summary;
  summary["command"] = "u-solve";
  summary["config"] = config_echo(cfg);
  summary["results"]["final_abs_u"] = std::abs(traj.u.back());
  summary["results"]["bound_state"] = !states.empty();
  summary["results"]["branch"] = bound_state_json(states);
  if (existence.y_at_zero) {
    summary["results"]["y_at_zero"] = *existence.y_at_zero;
    summary["results"]["y_at_zero_doubled"] = *existence.y_at_zero_doubled;
  }
  summary["results"]["scheme"] = traj.scheme;
  summary["results"]["kernel_evals"] = traj.kernel_evals;
  summary["timings"]["solve_s"] = solve_s;
  summary["timings"]["total_s"] = wall_since(t0);
  summary["tolerances"]["quad_abs"] = cfg.quad_abs_tol;
  summary["tolerances"]["quad_rel"] = cfg.quad_rel_tol;
  write_json(out_path(cfg, "u-solve", "summary.json"), summary);

  std::cout << "u-solve: |u(" << cfg.horizon << ")| = " << std::abs(traj.u.back())
            << ", bound_state = " << (states.empty() ? "false" : "true") << "\n";
  return 0;
}

// --------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.sweep_count < 1 || cfg.sweep_to < cfg.sweep_from)
    throw config_error("empty sweep range: need sweep.count >= 1 and to >= from");

  spectrum::DensityFamily family;
  if (cfg.sweep_param == "omega_c") {
    if (cfg.bath_kind != "ohmic")
      throw config_error("sweep.param = omega_c requires bath.kind = ohmic");
    family = [&cfg](double wc) {
      return bath::SpectralDensity{bath::OhmicFamily{cfg.eta, cfg.s, wc}};
    };
  } else if (cfg.sweep_param == "g") {
    if (cfg.bath_kind != "semicircle")
      throw config_error("sweep.param = g requires bath.kind = semicircle");
    family = [&cfg](double g) {
      return bath::SpectralDensity{bath::Semicircle{g, cfg.xi, cfg.omega_r}};
    };
  } else {
    throw config_error("unknown sweep.param: " + cfg.sweep_param);
  }

  std::vector<double> grid(cfg.sweep_count);
  const double dx = cfg.sweep_count > 1
                        ? (cfg.sweep_to - cfg.sweep_from) / (cfg.sweep_count - 1)
                        : 0.0;
  for (long i = 0; i < cfg.sweep_count; ++i) grid[i] = cfg.sweep_from + i * dx;

  const auto sweep = spectrum::spectrum_sweep(family, cfg.omega0, grid,
                                              static_cast<unsigned>(cfg.jobs));
  io::write_sweep_csv(out_path(cfg, "spectrum", "sweep.csv"), sweep);

  json summary;
  summary["command"] = "spectrum";
  summary["config"] = config_echo(cfg);
  if (sweep.threshold) summary["results"]["threshold_estimate"] = *sweep.threshold;
  else summary["results"]["threshold_estimate"] = nullptr;
  json branch = json::array();
  for (const auto& pt : sweep.points)
    for (const auto& bs : pt.states)
      branch.push_back({{"param", pt.param},
                        {"E_b", bs.energy},
                        {"Z", bs.residue},
                        {"gap", bs.gap}});
  summary["results"]["branch"] = branch;
  summary["timings"]["total_s"] = wall_since(t0);
  summary["tolerances"]["threshold"] = 1e-3;
  summary["tolerances"]["root_certificate"] = 1e-10;
  write_json(out_path(cfg, "spectrum", "summary.json"), summary);

  std::cout << "spectrum: " << sweep.points.size() << " points, threshold = ";
  if (sweep.threshold) std::cout << *sweep.threshold << "\n";
  else std::cout << "none\n";
  return 0;
}

// --------------------------------------------------------------- fidelity

int cmd_fidelity(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.protocol != "dv" && cfg.protocol != "cv")
    throw config_error("system.protocol must be dv or cv");
  const bool is_dv = cfg.protocol == "dv";

  const auto sd = make_density(cfg);
  const auto traj = dyn::solve_u(sd, cfg.omega0, cfg.horizon, cfg.h,
                                 solve_options(cfg));

  const auto states = spectrum::find_bound_states(sd, cfg.omega0);
  double z = 0.0, eb = 0.0;
  if (!states.empty()) {
    z = states.front().residue;  // largest-weight root drives the long-time law
    eb = states.front().energy;
    for (const auto& bs : states)
      if (bs.residue > z) { z = bs.residue; eb = bs.energy; }
  }

  const double kappa = sd.is_zero() ? 0.0 : dyn::markov_rate(sd, cfg.omega0);
  // the solver's O(h²) noise can leave |u| a few 1e-9 above 1; pull such
  // samples back onto the disk before they hit the fidelity domain checks
  auto on_disk = [](complexd u) {
    const double m = std::abs(u);
    return m > 1.0 ? u / m : u;
  };
  std::vector<double> f_exact(traj.size()), f_bma(traj.size()),
      f_env(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.t[k];
    const complexd u = on_disk(traj.u[k]);
    if (is_dv) {
      f_exact[k] = dv::avg_fidelity(u);
      f_bma[k] = dv::bma_fidelity(kappa, cfg.omega0, t);
      f_env[k] = dv::steady_fidelity(z, eb, t);
    } else {
      f_exact[k] = cv::avg_fidelity(u, cfg.r);
      f_bma[k] = cv::bma_fidelity(kappa, cfg.omega0, cfg.r, t);
      f_env[k] = cv::steady_fidelity(z, eb, cfg.r, t);
    }
  }
  io::write_fidelity_csv(out_path(cfg, "fidelity", "fidelity.csv"), traj.t,
                         f_exact, f_bma, f_env);
  if (is_dv) {
    // conditional-outcome dump for the final channel value, equator input
    const auto outcomes = dv::simulate(on_disk(traj.u.back()),
                                       dv::BlochState{0.5 * std::numbers::pi, 0.0});
    io::write_outcomes_csv(out_path(cfg, "fidelity", "outcomes.csv"), outcomes);
  }

  // transient maxima over the trailing fifth of the horizon
  double window_max = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k)
    if (traj.t[k] >= 0.8 * cfg.horizon) window_max = std::max(window_max, f_exact[k]);

  json summary;
  summary["command"] = "fidelity";
  summary["config"] = config_echo(cfg);
  summary["results"]["protocol"] = cfg.protocol;
  summary["results"]["classical_limit"] = is_dv ? 2.0 / 3.0 : 0.5;
  summary["results"]["bound_state"] = !states.empty();
  summary["results"]["branch"] = bound_state_json(states);
  summary["results"]["steady_max"] =
      is_dv ? dv::steady_fidelity_max(z) : cv::steady_fidelity_max(z, cfg.r);
  summary["results"]["window_max"] = window_max;
  summary["results"]["markov_rate"] = kappa;
  summary["timings"]["total_s"] = wall_since(t0);
  summary["tolerances"]["quad_abs"] = cfg.quad_abs_tol;
  summary["tolerances"]["quad_rel"] = cfg.quad_rel_tol;
  write_json(out_path(cfg, "fidelity", "summary.json"), summary);

  std::cout << "fidelity(" << cfg.protocol << "): late-window max = " << window_max
            << ", steady max = " << summary["results"]["steady_max"] << "\n";
  return 0;
}

// --------------------------------------------------------------- oracle

int cmd_oracle(const RunConfig& cfg, const std::string& which) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckList checks;
  json results;

  std::mt19937 rng(static_cast<unsigned>(cfg.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_u = [&]() {
    const double radius = std::sqrt(unit(rng));
    const double angle = 2.0 * M_PI * unit(rng);
    return std::polar(radius, angle);
  };

  if (which == "dv") {
    double worst = 0.0;
    complexd worst_u = 0.0;
    for (int i = 0; i < 100; ++i) {
      const complexd u = random_u();
      const double diff = std::fabs(dv::avg_fidelity(u) -
                                    dv::oracle_avg_fidelity(
                                        u, static_cast<int>(cfg.dv_nodes),
                                        static_cast<int>(cfg.dv_nodes)));
      if (diff > worst) { worst = diff; worst_u = u; }
    }
    checks.add("dv_protocol_vs_closed_form_max_abs_diff", worst, 1e-6);
    results["worst_u"] = {worst_u.real(), worst_u.imag()};
  } else if (which == "cv") {
    std::uniform_real_distribution<double> squeeze(0.0, 2.0);
    const complexd alpha(cfg.alpha_re, cfg.alpha_im);
    double worst = 0.0, worst_tail = 0.0, worst_alpha_dep = 0.0;
    for (int i = 0; i < 20; ++i) {
      const complexd u = random_u();
      const double r = squeeze(rng);
      cv::OracleGrid grid = cv::suggest_grid(u, r, alpha);
      if (cfg.cv_half_width > 0.0) grid.half_width = cfg.cv_half_width;
      if (cfg.cv_points != 201) grid.points = static_cast<int>(cfg.cv_points);
      const auto res = cv::oracle_avg_fidelity(u, r, alpha, grid);
      worst = std::max(worst, std::fabs(res.fidelity - cv::avg_fidelity(u, r)));
      worst_tail = std::max(worst_tail, res.tail_mass);
      if (i < 3) {  // input independence on a few draws
        for (const complexd a2 : {complexd(0.0, 0.0), complexd(1.0, 0.5)}) {
          cv::OracleGrid g2 = cv::suggest_grid(u, r, a2);
          if (cfg.cv_half_width > 0.0) g2.half_width = cfg.cv_half_width;
          if (cfg.cv_points != 201) g2.points = static_cast<int>(cfg.cv_points);
          const auto res2 = cv::oracle_avg_fidelity(u, r, a2, g2);
          worst_alpha_dep =
              std::max(worst_alpha_dep, std::fabs(res2.fidelity - res.fidelity));
        }
      }
    }
    checks.add("cv_outcome_integral_vs_closed_form_max_abs_diff", worst, 1e-6);
    checks.add("cv_input_independence_max_abs_diff", worst_alpha_dep, 1e-6);
    results["worst_tail_mass"] = worst_tail;
    if (worst_tail > 1e-8)
      std::cerr << "warning: outcome-grid tail mass " << worst_tail
                << " exceeds 1e-8; enlarge cv_half_width/cv_points\n";
  } else if (which == "lattice") {
    lattice::ChainParams chain;
    chain.n_sites = static_cast<int>(cfg.lattice_n);
    chain.omega_r = cfg.omega_r;
    chain.xi = cfg.xi;
    chain.omega0 = cfg.omega0;
    chain.g = cfg.g;
    const auto spec = lattice::diagonalize(chain);
    const bath::SpectralDensity semi{lattice::semicircle_density(chain)};
    io::write_excitation_csv(out_path(cfg, "oracle", "lattice_spectrum.csv"), spec);
    io::write_trajectory_csv(out_path(cfg, "oracle", "lattice_u.csv"),
                             lattice::exact_u(chain, cfg.horizon, cfg.h));

    const double window = lattice::revival_window(chain);
    const double compare_to = std::min(cfg.horizon, window);
    const auto traj = dyn::solve_u(semi, cfg.omega0, cfg.horizon, cfg.h,
                                   solve_options(cfg));
    double worst_mod = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      if (traj.t[k] > compare_to) break;
      const auto ue = lattice::exact_u_at(spec, traj.t[k]);
      worst_mod =
          std::max(worst_mod, std::fabs(std::abs(ue) - std::abs(traj.u[k])));
    }
    checks.add("lattice_vs_volterra_max_modulus_diff", worst_mod, 1e-3);

    const auto states = spectrum::find_bound_states(semi, cfg.omega0);
    if (!states.empty()) {
      double mean = 0.0;
      int count = 0;
      for (double t = 0.80 * window; t <= 0.96 * window; t += window / 1000.0) {
        mean += std::abs(lattice::exact_u_at(spec, t));
        ++count;
      }
      mean /= count;
      double best_z = 0.0;
      for (const auto& bs : states) best_z = std::max(best_z, bs.residue);
      checks.add("lattice_plateau_vs_residue_abs_diff",
                 std::fabs(mean - best_z), 1e-2);
      results["plateau"] = mean;
      results["Z"] = best_z;
    } else {
      results["plateau"] = nullptr;
    }
  } else {
    throw config_error("oracle --which must be dv, cv, or lattice");
  }

  json report;
  report["command"] = "oracle";
  report["which"] = which;
  report["config"] = config_echo(cfg);
  report["results"] = results;
  report["checks"] = checks.entries;
  report["tolerances"]["quad_abs"] = cfg.quad_abs_tol;
  report["tolerances"]["quad_rel"] = cfg.quad_rel_tol;
  report["timings"]["total_s"] = wall_since(t0);
  write_json(out_path(cfg, "oracle", which + "_report.json"), report);
  return checks.all_pass ? 0 : 1;
}

}  // namespace

const char* usage() {
  return "usage: nmtel <command> [--config FILE] [--<section>-<key> VALUE ...]\n"
         "\n"
         "commands:\n"
         "  u-solve    solve the channel propagator u(t); trajectory CSV + summary\n"
         "  spectrum   sweep a bath parameter; band edges, bound states, threshold\n"
         "  fidelity   teleportation fidelity time series (--protocol dv|cv)\n"
         "  oracle     independent cross-checks (--which dv|cv|lattice); exit 1 on\n"
         "             tolerance violation\n"
         "\n"
         "sections: bath, system, numerics, sweep, output (see README for keys).\n"
         "Shorthand flags: --eta --s --omega-c --g --xi --omega-r --kind --table\n"
         "--omega0 --r --protocol --alpha-re --alpha-im --h --horizon --jobs --seed\n";
}

int run_cli(const std::vector<std::string>& args) {
  try {
    if (args.empty()) {
      std::cerr << usage();
      return 2;
    }
    const std::string command = args[0];
    if (command == "help" || command == "--help" || command == "-h") {
      std::cout << usage();
      return 0;
    }

    // collect flags; --config applies first, remaining flags win over it
    RunConfig cfg;
    std::string which = "dv";
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
      const std::string& arg = args[i];
      if (arg.rfind("--", 0) != 0)
        throw config_error("expected a --flag, got '" + arg + "'");
      if (i + 1 >= args.size())
        throw config_error("flag " + arg + " needs a value");
      const std::string value = args[++i];
      const std::string name = arg.substr(2);
      if (name == "config") config_path = value;
      else if (name == "which") which = value;
      else overrides.emplace_back(name, value);
    }
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& [name, value] : overrides)
      assign(cfg, resolve_flag(name), value);

    if (command == "u-solve") return cmd_u_solve(cfg);
    if (command == "spectrum") return cmd_spectrum(cfg);
    if (command == "fidelity") return cmd_fidelity(cfg);
    if (command == "oracle") return cmd_oracle(cfg, which);
    std::cerr << "unknown command: " << command << "\n" << usage();
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nmtel::cli
