#pragma once

#include <cstddef>
#include <functional>

namespace gupspec {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b]. Bisects the worst panel first
// until the summed error estimate satisfies
//   error <= max(tol * |value|, tol).
// Deterministic: identical inputs give bit-identical results.
// Throws MaxSubdivisions after 10^6 integrand evaluations and
// NonFiniteIntegrand (with the abscissa) if fn returns a non-finite value.
QuadratureResult integrate_adaptive(const std::function<double(double)>& fn,
                                    double a, double b, double tol);

// Change of variable X = center + half_width * sin(theta) mapping
// theta in [-pi/2, pi/2] onto [x1, x2]. Composing with an integrand that
// vanishes like sqrt((x2 - X)(X - x1)) yields a smooth integrand in theta.
struct TurningPointMap {
  double center;
  double half_width;

  // Requires x1 < x2.
  TurningPointMap(double x1, double x2);

  double x(double theta) const;
  double jacobian(double theta) const; // dX/dtheta
};

} // namespace gupspec
