#pragma once

// Adaptive Gauss–Kronrod 15(7) quadrature plus Gauss–Legendre node tables.
// The adaptive driver keeps a worst-error-first heap of panels and bisects
// until the summed error estimate meets the tolerance.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "nmtel/errors.hpp"

namespace nmtel::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_panels = 4096;
  bool throw_on_failure = true;
};

struct Report {
  double error = 0.0;       // final summed error estimate
  long evals = 0;           // integrand evaluations
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (positive half).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

inline double norm_of(double v) { return std::fabs(v); }
inline double norm_of(const std::complex<double>& v) { return std::abs(v); }

}  // namespace detail

// Single Kronrod panel on [a, b]; error = |I_kronrod − I_gauss|.
template <typename F>
auto gk15_panel(F&& f, double a, double b, double* error) {
  using T = std::decay_t<decltype(f(a))>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T fc = f(mid);
  T kron = detail::kWgk[7] * fc;
  T gauss = detail::kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const T lo = f(mid - half * detail::kXgk[i]);
    const T hi = f(mid + half * detail::kXgk[i]);
    kron += detail::kWgk[i] * (lo + hi);
    if (i % 2 == 1) gauss += detail::kWg[i / 2] * (lo + hi);
  }
  kron *= half;
  gauss *= half;
  if (error) *error = detail::norm_of(kron - gauss);
  return kron;
}

// Adaptive integration over the union of panels [pts[0], pts[1]], ...
// Seeding interior breakpoints lets callers isolate kinks and subtraction
// points up front.
template <typename F>
auto integrate_segmented(F&& f, const std::vector<double>& pts, Options opt = {},
                         Report* report = nullptr) {
  using T = std::decay_t<decltype(f(pts.front()))>;

  struct Panel {
    double a, b, error;
    T value;
    long seq;
    bool operator<(const Panel& o) const {
      return error != o.error ? error < o.error : seq > o.seq;
    }
  };

  std::priority_queue<Panel> heap;
  T total{};
  double total_err = 0.0;
  long evals = 0;
  long seq = 0;
  int panels = 0;

  auto push = [&](double a, double b) {
    double err = 0.0;
    T v = gk15_panel(f, a, b, &err);
    evals += 15;
    ++panels;
    total += v;
    total_err += err;
    heap.push(Panel{a, b, err, v, seq++});
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(pts[i], pts[i + 1]);

  auto tolerance = [&] {
    return std::max(opt.abs_tol, opt.rel_tol * detail::norm_of(total));
  };

  while (total_err > tolerance() && panels < opt.max_panels) {
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.error;
    --panels;
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) {  // interval exhausted at double precision
      total += worst.value;
      total_err += worst.error;
      ++panels;
      heap.push(worst);
      break;
    }
    push(worst.a, m);
    push(m, worst.b);
  }

  const bool ok = total_err <= tolerance();
  if (report) *report = Report{total_err, evals, panels, ok};
  if (!ok && opt.throw_on_failure)
    throw quadrature_error("adaptive quadrature did not converge", total_err);
  return total;
}

template <typename F>
auto integrate(F&& f, double a, double b, Options opt = {},
               Report* report = nullptr) {
  return integrate_segmented(std::forward<F>(f), std::vector<double>{a, b}, opt,
                             report);
}

// Full 15-node Kronrod rule mapped onto [a, b]: nodes ascending, weights
// matching. Used to build fixed composite rules whose nodes can be cached.
void kronrod15_points(double a, double b, double nodes[15], double weights[15]);

// Gauss–Legendre nodes/weights on [-1, 1] (Newton iteration on P_n).
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

}  // namespace nmtel::quad
