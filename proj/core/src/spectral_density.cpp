#include "nmtel/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nmtel::bath {

namespace {

constexpr double kTruncLog = 36.841361487904734;  // ln(1e16)

double ohmic_j(const OhmicFamily& p, double w) {
  if (w <= 0.0 || p.eta == 0.0) return 0.0;
  return p.eta * std::pow(w, p.s) * std::pow(p.omega_c, 1.0 - p.s) *
         std::exp(-w / p.omega_c);
}

double semicircle_j(const Semicircle& p, double w) {
  const double d = w - p.omega_r;
  const double arg = 4.0 * p.xi * p.xi - d * d;
  if (arg <= 0.0 || p.g == 0.0) return 0.0;
  return p.g * p.g / (2.0 * std::numbers::pi * p.xi * p.xi) * std::sqrt(arg);
}

double tabulated_j(const Tabulated& p, double w) {
  if (w <= p.omega.front() || w >= p.omega.back()) {
    // exact hits on the boundary samples still count as support
    if (w == p.omega.front()) return p.j.front();
    if (w == p.omega.back()) return p.j.back();
    return 0.0;
  }
  const auto it = std::upper_bound(p.omega.begin(), p.omega.end(), w);
  const std::size_t k = static_cast<std::size_t>(it - p.omega.begin()) - 1;
  const double t = (w - p.omega[k]) / (p.omega[k + 1] - p.omega[k]);
  return p.j[k] + t * (p.j[k + 1] - p.j[k]);
}

void validate(const Tabulated& p) {
  if (p.omega.size() < 2 || p.omega.size() != p.j.size())
    throw std::invalid_argument("tabulated density needs >= 2 (omega, J) pairs");
  for (std::size_t k = 0; k < p.omega.size(); ++k) {
    if (!std::isfinite(p.omega[k]) || !std::isfinite(p.j[k]))
      throw std::invalid_argument("tabulated density has non-finite entries");
    if (p.j[k] < 0.0)
      throw std::invalid_argument("tabulated density has J < 0");
    if (k > 0 && p.omega[k] <= p.omega[k - 1])
      throw std::invalid_argument("tabulated density grid must be strictly increasing");
  }
}

// trapezoid on the sample grid; exact for the linear interpolant when f is
// evaluated at the nodes only
template <typename F>
auto tabulated_trapezoid(const Tabulated& p, F&& f) {
  using T = std::decay_t<decltype(p.j[0] * f(p.omega[0]))>;
  T acc{};
  for (std::size_t k = 0; k + 1 < p.omega.size(); ++k) {
    const double dw = p.omega[k + 1] - p.omega[k];
    acc += 0.5 * dw * (p.j[k] * f(p.omega[k]) + p.j[k + 1] * f(p.omega[k + 1]));
  }
  return acc;
}

// P∫ J_lin(ω)/(E−ω) dω, exact for the piecewise-linear interpolant.  Each
// segment contributes (p+qE)[ln|E−x0| − ln|E−x1|] − qΔx, and the divergent
// node logs cancel by continuity except at a boundary node with J > 0.
double tabulated_pv(const Tabulated& tab, double e) {
  const std::size_t n = tab.omega.size();
  double acc = 0.0;
  std::vector<double> logc(n, 0.0);  // coefficient of ln|E − x_k|
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double x0 = tab.omega[k], x1 = tab.omega[k + 1];
    const double q = (tab.j[k + 1] - tab.j[k]) / (x1 - x0);
    const double at_e = tab.j[k] + q * (e - x0);  // segment extension at E
    logc[k] += at_e;
    logc[k + 1] -= at_e;
    acc -= q * (x1 - x0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (e == tab.omega[k]) {
      // continuity makes the coefficient vanish at interior nodes; a hit on a
      // boundary node with J > 0 is a genuine divergence
      if ((k == 0 || k + 1 == n) && tab.j[k] != 0.0)
        throw singular_endpoint_error(
            "principal-value shift diverges at a support endpoint with J > 0");
      continue;
    }
    if (logc[k] != 0.0) acc += logc[k] * std::log(std::fabs(e - tab.omega[k]));
  }
  return acc;
}

}  // namespace

SpectralDensity::SpectralDensity(OhmicFamily p) : form_(p) {
  if (p.s <= 0.0) throw std::invalid_argument("ohmic family requires s > 0");
  if (p.omega_c <= 0.0) throw std::invalid_argument("ohmic family requires omega_c > 0");
  if (p.eta < 0.0) throw std::invalid_argument("ohmic family requires eta >= 0");
}

SpectralDensity::SpectralDensity(Semicircle p) : form_(p) {
  if (p.xi <= 0.0) throw std::invalid_argument("semicircle requires xi > 0");
  if (p.g < 0.0) throw std::invalid_argument("semicircle requires g >= 0");
}

SpectralDensity::SpectralDensity(Tabulated p) : form_(std::move(p)) {
  validate(std::get<Tabulated>(form_));
}

SpectralDensity SpectralDensity::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open spectral-density file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty spectral-density file: " + path);
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    return s;
  };
  if (strip(line) != "omega,J")
    throw std::invalid_argument("spectral-density CSV must start with header 'omega,J'");
  Tabulated tab;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double w = 0.0, jv = 0.0;
    if (!(row >> w >> jv))
      throw std::invalid_argument("bad row " + std::to_string(lineno) + " in " + path);
    tab.omega.push_back(w);
    tab.j.push_back(jv);
  }
  return SpectralDensity(std::move(tab));
}

double SpectralDensity::operator()(double omega) const noexcept {
  return std::visit(
      [omega](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, OhmicFamily>) return ohmic_j(p, omega);
        if constexpr (std::is_same_v<P, Semicircle>) return semicircle_j(p, omega);
        if constexpr (std::is_same_v<P, Tabulated>) return tabulated_j(p, omega);
      },
      form_);
}

Support SpectralDensity::support() const noexcept {
  if (std::holds_alternative<OhmicFamily>(form_))
    return {0.0, std::numeric_limits<double>::infinity()};
  if (const auto* p = std::get_if<Semicircle>(&form_))
    return {p->omega_r - 2.0 * p->xi, p->omega_r + 2.0 * p->xi};
  const auto& t = std::get<Tabulated>(form_);
  return {t.omega.front(), t.omega.back()};
}

double SpectralDensity::cutoff() const noexcept {
  if (const auto* p = std::get_if<OhmicFamily>(&form_))
    return p->omega_c * kTruncLog * std::max(1.0, p->s);
  return support().hi;
}

bool SpectralDensity::is_zero() const noexcept {
  if (const auto* p = std::get_if<OhmicFamily>(&form_)) return p->eta == 0.0;
  if (const auto* p = std::get_if<Semicircle>(&form_)) return p->g == 0.0;
  const auto& t = std::get<Tabulated>(form_);
  return std::all_of(t.j.begin(), t.j.end(), [](double v) { return v == 0.0; });
}

double SpectralDensity::weighted(const std::function<double(double)>& f,
                                 const quad::Options& opt) const {
  if (is_zero()) return 0.0;
  if (const auto* p = std::get_if<OhmicFamily>(&form_)) {
    const double b = cutoff();
    const auto* po = p;
    return quad::integrate_segmented(
        [po, &f](double w) { return ohmic_j(*po, w) * f(w); },
        {0.0, std::min(po->omega_c, b), b}, opt);
  }
  if (const auto* p = std::get_if<Semicircle>(&form_)) {
    const double pref = 2.0 * p->g * p->g / std::numbers::pi;
    const auto* ps = p;
    return pref * quad::integrate(
                      [ps, &f](double th) {
                        const double s = std::sin(th);
                        return s * s * f(ps->omega_r + 2.0 * ps->xi * std::cos(th));
                      },
                      0.0, std::numbers::pi, opt);
  }
  return tabulated_trapezoid(std::get<Tabulated>(form_), f);
}

std::complex<double> SpectralDensity::weighted_c(
    const std::function<std::complex<double>(double)>& f,
    const quad::Options& opt) const {
  if (is_zero()) return 0.0;
  if (const auto* p = std::get_if<OhmicFamily>(&form_)) {
    const double b = cutoff();
    const auto* po = p;
    return quad::integrate_segmented(
        [po, &f](double w) { return ohmic_j(*po, w) * f(w); },
        {0.0, std::min(po->omega_c, b), b}, opt);
  }
  if (const auto* p = std::get_if<Semicircle>(&form_)) {
    const double pref = 2.0 * p->g * p->g / std::numbers::pi;
    const auto* ps = p;
    return pref * quad::integrate(
                      [ps, &f](double th) {
                        const double s = std::sin(th);
                        return s * s * f(ps->omega_r + 2.0 * ps->xi * std::cos(th));
                      },
                      0.0, std::numbers::pi, opt);
  }
  // kernel-type integrands oscillate between samples, so integrate the
  // interpolant adaptively instead of using the node trapezoid
  const auto& tab = std::get<Tabulated>(form_);
  std::vector<double> seeds = tab.omega;
  if (seeds.size() > 64) {  // cap the number of seed panels
    std::vector<double> coarse;
    const std::size_t stride = seeds.size() / 64 + 1;
    for (std::size_t k = 0; k < seeds.size(); k += stride) coarse.push_back(seeds[k]);
    if (coarse.back() != seeds.back()) coarse.push_back(seeds.back());
    seeds = std::move(coarse);
  }
  return quad::integrate_segmented(
      [&tab, &f](double w) { return tabulated_j(tab, w) * f(w); }, seeds, opt);
}

double SpectralDensity::total_weight(const quad::Options& opt) const {
  return weighted([](double) { return 1.0; }, opt);
}

std::complex<double> SpectralDensity::memory_kernel(double x,
                                                    const quad::Options& opt) const {
  if (x < 0.0) throw std::invalid_argument("memory_kernel: x must be >= 0");
  if (is_zero()) return 0.0;
  if (const auto* p = std::get_if<OhmicFamily>(&form_)) {
    // ∫₀^∞ η ω^s ωc^{1−s} e^{−ω/ωc} e^{−iωx} dω in closed form
    const std::complex<double> z(1.0 / p->omega_c, x);
    return p->eta * std::pow(p->omega_c, 1.0 - p->s) * std::tgamma(p->s + 1.0) *
           std::pow(z, -(p->s + 1.0));
  }
  return weighted_c(
      [x](double w) {
        return std::exp(std::complex<double>(0.0, -w * x));
      },
      opt);
}

double SpectralDensity::lamb_shift(double e, const quad::Options& opt) const {
  if (is_zero()) return 0.0;
  if (const auto* tab = std::get_if<Tabulated>(&form_)) return tabulated_pv(*tab, e);

  const Support sup = support();
  const double b = cutoff();
  const bool at_edge = (e == sup.lo) || (e == sup.hi);
  if (at_edge && (*this)(e) > 0.0)
    throw singular_endpoint_error(
        "principal-value shift diverges at a support endpoint with J > 0");

  const bool inside = e > sup.lo && e < sup.hi && e < b;
  if (!inside) {
    // ordinary (possibly improper, but convergent) integral
    return weighted([e](double w) { return 1.0 / (e - w); }, opt);
  }

  // singularity subtraction:
  //   P∫ J/(E−ω) = ∫ [J(ω) − J(E)]/(E−ω) dω + J(E) ln((E−a)/(b−E))
  const double je = (*this)(e);
  if (const auto* p = std::get_if<OhmicFamily>(&form_)) {
    const auto* po = p;
    const double sub = quad::integrate_segmented(
        [po, e, je](double w) { return (ohmic_j(*po, w) - je) / (e - w); },
        {0.0, e, b}, opt);
    return sub + je * std::log(e / (b - e));
  }
  const auto& p = std::get<Semicircle>(form_);
  const auto* ps = &p;
  const double sub = quad::integrate_segmented(
      [ps, e, je](double w) { return (semicircle_j(*ps, w) - je) / (e - w); },
      {sup.lo, e, sup.hi}, opt);
  return sub + je * std::log((e - sup.lo) / (sup.hi - e));
}

const OhmicFamily* SpectralDensity::ohmic() const noexcept {
  return std::get_if<OhmicFamily>(&form_);
}
const Semicircle* SpectralDensity::semicircle() const noexcept {
  return std::get_if<Semicircle>(&form_);
}
const Tabulated* SpectralDensity::tabulated() const noexcept {
  return std::get_if<Tabulated>(&form_);
}

std::complex<double> semicircle_kernel_bessel(const Semicircle& p, double x) {
  if (x < 0.0) throw std::invalid_argument("semicircle_kernel_bessel: x must be >= 0");
  const double y = 2.0 * p.xi * x;
  // μ(x) = g² e^{−iωr x} · 2J₁(y)/y
  double envelope;
  if (y < 1e-6) {
    envelope = 1.0 - y * y / 8.0;
  } else {
    envelope = 2.0 * std::cyl_bessel_j(1.0, y) / y;
  }
  return p.g * p.g * envelope * std::exp(std::complex<double>(0.0, -p.omega_r * x));
}

std::vector<KernelSample> kernel_table(const SpectralDensity& sd, double h,
                                       std::size_t n, KernelScheme scheme,
                                       const quad::Options& opt) {
  std::vector<KernelSample> table(n + 1);
  const auto* semi = sd.semicircle();
  for (std::size_t j = 0; j <= n; ++j) {
    const double x = static_cast<double>(j) * h;
    std::complex<double> mu;
    if (scheme == KernelScheme::SemicircleBessel && semi) {
      mu = semicircle_kernel_bessel(*semi, x);
    } else {
      mu = sd.memory_kernel(x, opt);
    }
    if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()))
      throw std::runtime_error("kernel table: non-finite memory kernel at x = " +
                               std::to_string(x));
    table[j] = KernelSample{x, mu};
  }
  return table;
}

}  // namespace nmtel::bath
