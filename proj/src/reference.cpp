#include "gupspec/reference.hpp"

#include <cmath>

#include "gupspec/errors.hpp"

namespace gupspec {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_positive_pair(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw ParameterDomain("closed-form spectrum requires alpha > 0 and beta > 0");
}
} // namespace

OscillatorCoefficients oscillator_coefficients(double alpha, double beta) {
  require_positive_pair(alpha, beta);
  const double s = std::sqrt(alpha * beta);
  if (!(s < 1.0))
    throw ParameterDomain("oscillator coefficients require alpha*beta < 1");
  const double ra = std::sqrt(alpha);
  const double rb = std::sqrt(beta);
  const double plus = (ra + rb) * (ra + rb) / (4.0 * alpha * beta);
  const double minus = (ra - rb) * (ra - rb) / (4.0 * alpha * beta);
  return OscillatorCoefficients{
      plus * (1.0 + s),
      -(alpha + beta) / (2.0 * alpha * beta),
      minus * (1.0 - s),
      (1.0 + s) / (1.0 - s),
  };
}

double oscillator_wkb_closed(double alpha, double beta, int n, double delta) {
  require_positive_pair(alpha, beta);
  const double s = std::sqrt(alpha * beta);
  const double ra = std::sqrt(alpha);
  const double rb = std::sqrt(beta);
  const double plus = (ra + rb) * (ra + rb) / (4.0 * alpha * beta);
  const double minus = (ra - rb) * (ra - rb) / (4.0 * alpha * beta);
  const double phase = 2.0 * (n + delta) * s;
  return plus * std::exp(phase) + minus * std::exp(-phase) -
         (alpha + beta) / (2.0 * alpha * beta);
}

double oscillator_exact_leading(double alpha, double beta, int n) {
  const OscillatorCoefficients c = oscillator_coefficients(alpha, beta);
  return c.a_lead * std::pow(c.q, n) + c.b_lead + c.c_lead * std::pow(c.q, -n);
}

double oscillator_linear(double alpha, double beta, int n) {
  const double half = n + 0.5;
  return 2.0 * n + 1.0 + (alpha + beta) * half * half;
}

double oscillator_exact_offset(double alpha, double beta) {
  return 0.25 * (alpha + beta);
}

double well_linear(double alpha, double beta, double a, int n) {
  if (!(a > 0.0)) throw ParameterDomain("well spectrum requires a > 0");
  if (n < 1) throw ParameterDomain("well levels are indexed from n = 1");
  const double k = kPi * n / (2.0 * a);
  const double k2 = k * k;
  return k2 * (1.0 + (2.0 / 3.0) * alpha * a * a + (2.0 / 3.0) * beta * k2);
}

double well_beta0_exact(double alpha, double a, int n) {
  if (!(alpha > 0.0))
    throw ParameterDomain("well_beta0_exact requires alpha > 0");
  if (!(a > 0.0)) throw ParameterDomain("well spectrum requires a > 0");
  if (n < 1) throw ParameterDomain("well levels are indexed from n = 1");
  const double k = kPi * n * std::sqrt(alpha) /
                   (2.0 * std::atan(std::sqrt(alpha) * a));
  return k * k;
}

double well_free_limit(double alpha, int n) {
  if (!(alpha > 0.0))
    throw ParameterDomain("well_free_limit requires alpha > 0");
  if (n < 1) throw ParameterDomain("well levels are indexed from n = 1");
  return alpha * static_cast<double>(n) * static_cast<double>(n);
}

} // namespace gupspec
