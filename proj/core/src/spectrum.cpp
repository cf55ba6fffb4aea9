#include "nmtel/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "nmtel/parallel.hpp"

namespace nmtel::spectrum {

namespace {

// probe offset used to evaluate Y "at" a band edge when the edge itself is
// degenerate (tabulated data with J > 0 at the boundary)
double edge_probe(const bath::SpectralDensity& sd, double omega0) {
  const auto sup = sd.support();
  const double width = std::isfinite(sup.hi) ? sup.hi - sup.lo : omega0;
  return 1e-9 * std::max({1.0, std::fabs(omega0), width});
}

double y_at(const bath::SpectralDensity& sd, double omega0, double e,
            const quad::Options& opt) {
  // Y(E) = ω0 − ∫ J/(ω − E) = ω0 + ∫ J/(E − ω) = ω0 + Δ(E)
  return omega0 + sd.lamb_shift(e, opt);
}

struct Gap {
  int id;        // 0 below, 1 above
  double edge;   // band edge adjoining the gap
  bool below;    // gap extends to −∞ (true) or +∞ (false)
};

// f(E) = Y(E) − E is strictly decreasing outside the band, so the root in a
// gap exists iff f has the right sign at the edge, and bisection is safe.
double f_of(const bath::SpectralDensity& sd, double omega0, double e,
            const quad::Options& opt) {
  return y_at(sd, omega0, e, opt) - e;
}

std::optional<BoundState> root_in_gap(const bath::SpectralDensity& sd,
                                      double omega0, const Gap& gap,
                                      const RootOptions& opt) {
  const double dir = gap.below ? -1.0 : 1.0;
  double near = gap.edge;
  double f_near;
  try {
    f_near = f_of(sd, omega0, near, opt.quad);
  } catch (const singular_endpoint_error&) {
    near = gap.edge + dir * edge_probe(sd, omega0);
    f_near = f_of(sd, omega0, near, opt.quad);
  }
  // below the band f runs from +∞ down to f(lo): root iff f(lo) < 0;
  // above it runs from f(hi) down to −∞: root iff f(hi) > 0
  if (gap.below ? (f_near >= 0.0) : (f_near <= 0.0)) return std::nullopt;

  double step = std::max({1.0, std::fabs(omega0), std::fabs(gap.edge)});
  double far = near;
  double f_far = f_near;
  int k = 0;
  for (; k < opt.max_expansions; ++k) {
    far = near + dir * step;
    f_far = f_of(sd, omega0, far, opt.quad);
    if ((f_near < 0.0) != (f_far < 0.0)) break;
    step *= 2.0;
  }
  if (k == opt.max_expansions)
    throw bracketing_failure("no sign change after bracket expansions; treating as no root");

  double a = near, fa = f_near;
  double b = far;
  double mid = 0.5 * (a + b), fm = 0.0;
  const double want = 0.25 * opt.certificate_tol * std::max(1.0, std::fabs(omega0));
  bool exhausted = false;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (a + b);
    if (mid == a || mid == b) {  // bracket collapsed to adjacent doubles
      exhausted = true;
      break;
    }
    fm = f_of(sd, omega0, mid, opt.quad);
    if (std::fabs(fm) <= want) break;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  // either the residual meets the certificate, or the sign change pins the
  // root to one ulp (possible when Y is log-stiff at a hard band edge, which
  // only tabulated data with J > 0 at the boundary produces)
  if (!exhausted &&
      std::fabs(fm) > opt.certificate_tol * std::max(1.0, std::fabs(omega0)))
    throw std::runtime_error("bound-state root failed its certificate check");

  BoundState bs;
  bs.energy = mid;
  bs.gap = gap.id;
  const double denom =
      1.0 + sd.weighted([&](double w) {
        const double d = bs.energy - w;
        return 1.0 / (d * d);
      }, opt.quad);
  bs.residue = 1.0 / denom;
  return bs;
}

}  // namespace

double y_function(const bath::SpectralDensity& sd, double omega0, double e,
                  const quad::Options& opt) {
  const auto sup = sd.support();
  if (e > sup.lo && e < sup.hi && !sd.is_zero())
    throw std::domain_error(
        "y_function: E lies inside the continuum band; isolated levels exist "
        "only outside the support");
  return y_at(sd, omega0, e, opt);
}

ExistenceReport bound_state_exists(const bath::SpectralDensity& sd, double omega0,
                                   const RootOptions& opt) {
  ExistenceReport rep;
  if (sd.is_zero()) return rep;
  const auto sup = sd.support();

  auto edge_f = [&](double edge, double dir) {
    try {
      return f_of(sd, omega0, edge, opt.quad);
    } catch (const singular_endpoint_error&) {
      return f_of(sd, omega0, edge + dir * edge_probe(sd, omega0), opt.quad);
    }
  };

  rep.margin_below = edge_f(sup.lo, -1.0);
  rep.below = rep.margin_below < 0.0;
  if (std::isfinite(sup.hi)) {
    rep.margin_above = edge_f(sup.hi, +1.0);
    rep.above = rep.margin_above > 0.0;
  }
  if (sd.ohmic()) {
    rep.y_at_zero = rep.margin_below;  // Y(0) − 0
    rep.y_at_zero_doubled = 2.0 * rep.margin_below - omega0;  // ω0 − 2∫J/ω dω
  }
  return rep;
}

std::vector<BoundState> find_bound_states(const bath::SpectralDensity& sd,
                                          double omega0, const RootOptions& opt) {
  std::vector<BoundState> states;
  if (sd.is_zero()) return states;
  const auto sup = sd.support();

  std::vector<Gap> gaps;
  gaps.push_back(Gap{0, sup.lo, true});
  if (std::isfinite(sup.hi)) gaps.push_back(Gap{1, sup.hi, false});

  for (const auto& gap : gaps) {
    std::optional<BoundState> bs;
    try {
      bs = root_in_gap(sd, omega0, gap, opt);
    } catch (const bracketing_failure& e) {
      // Y(E) − E is E-dominated far from the band, so no sign change means
      // no root; still worth a note since it exhausted the expansion budget
      std::cerr << "find_bound_states: gap " << gap.id << ": " << e.what() << "\n";
      continue;
    }
    if (!bs) continue;
    states.push_back(*bs);
  }
  return states;
}

SpectrumSweep spectrum_sweep(const DensityFamily& family, double omega0,
                             const std::vector<double>& grid, unsigned jobs,
                             double threshold_tol, const RootOptions& opt) {
  if (grid.empty()) throw std::invalid_argument("spectrum_sweep: empty parameter grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("spectrum_sweep: parameter grid must be monotone");

  SpectrumSweep sweep;
  sweep.points.resize(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const auto sd = family(grid[i]);
    const auto sup = sd.support();
    SweepPoint pt;
    pt.param = grid[i];
    pt.band_lo = sup.lo;
    pt.band_hi = sup.hi;
    pt.states = find_bound_states(sd, omega0, opt);
    sweep.points[i] = std::move(pt);
  });

  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    if (sweep.points[i].states.empty()) continue;
    if (i == 0) {
      sweep.threshold = grid[0];  // onset outside (or at the start of) the grid
    } else {
      sweep.threshold = refine_threshold(family, omega0, grid[i - 1], grid[i],
                                         threshold_tol, opt);
    }
    break;
  }
  return sweep;
}

double refine_threshold(const DensityFamily& family, double omega0, double absent,
                        double present, double tol, const RootOptions& opt) {
  auto exists = [&](double p) {
    const auto rep = bound_state_exists(family(p), omega0, opt);
    return rep.below || rep.above;
  };
  double a = absent, b = present;
  while (std::fabs(b - a) > tol) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    (exists(m) ? b : a) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace nmtel::spectrum
