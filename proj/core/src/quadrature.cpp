#include "nmtel/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmtel::quad {

void kronrod15_points(double a, double b, double nodes[15], double weights[15]) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < 7; ++i) {
    nodes[i] = mid - half * detail::kXgk[i];
    weights[i] = half * detail::kWgk[i];
    nodes[14 - i] = mid + half * detail::kXgk[i];
    weights[14 - i] = half * detail::kWgk[i];
  }
  nodes[7] = mid;
  weights[7] = half * detail::kWgk[7];
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.nodes[i] = -x;
    gl.weights[i] = w;
    gl.nodes[n - 1 - i] = x;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

}  // namespace nmtel::quad
