#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace nmtel {

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}
}  // namespace detail

// Adaptive quadrature ran out of subdivisions before reaching the requested
// tolerance; `achieved` carries the error estimate at the point of failure.
struct quadrature_error : std::runtime_error {
  quadrature_error(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " +
                           detail::sci(achieved_error) + ")"),
        achieved(achieved_error) {}
  double achieved;
};

// Principal-value shift requested exactly at a support endpoint where the
// integral diverges (J does not vanish there).
struct singular_endpoint_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Volterra solver produced |u| above the physical bound; `sample` indexes the
// worst offender on the time grid.
struct solver_instability : std::runtime_error {
  solver_instability(const std::string& what, std::size_t worst_sample,
                     double worst_abs_u)
      : std::runtime_error(what), sample(worst_sample), abs_u(worst_abs_u) {}
  std::size_t sample;
  double abs_u;
};

// Root bracketing for the spectrum equation gave up after the allowed number
// of expansions.
struct bracketing_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nmtel
