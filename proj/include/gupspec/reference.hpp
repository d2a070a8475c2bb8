#pragma once

namespace gupspec {

// Closed-form spectra for the quadratic deformation family, used as oracles
// for the numeric quantizer and exposed for comparison output. All formulas
// assume hbar = 1.

// Leading-order coefficients of the exact oscillator spectrum a*q^n + b + c*q^-n,
// plus the exact geometric ratio q.
struct OscillatorCoefficients {
  double a_lead;
  double b_lead;
  double c_lead;
  double q;
};

// Requires alpha, beta > 0 and alpha*beta < 1.
OscillatorCoefficients oscillator_coefficients(double alpha, double beta);

// Deformed oscillator spectrum from the phase-space rule:
//   ((sqrt(a)+sqrt(b))^2/(4ab)) e^{2(n+delta)sqrt(ab)}
// + ((sqrt(a)-sqrt(b))^2/(4ab)) e^{-2(n+delta)sqrt(ab)} - (a+b)/(2ab).
// Requires alpha, beta > 0; the undeformed case is the 2n+1 limit, not this
// formula (it has removable 1/(alpha*beta) structure).
double oscillator_wkb_closed(double alpha, double beta, int n, double delta);

// Exact oscillator spectrum with leading-order coefficients,
// a*q^n + b + c*q^-n. Valid for small alpha, beta.
double oscillator_exact_leading(double alpha, double beta, int n);

// Linear approximation 2n+1 + (alpha+beta)(n+1/2)^2.
double oscillator_linear(double alpha, double beta, int n);

// Leading difference (alpha+beta)/4 between the true exact spectrum and the
// linearized phase-space result.
double oscillator_exact_offset(double alpha, double beta);

// Square-well spectrum linear in the deformation parameters:
//   (pi n / 2a)^2 [1 + (2/3) alpha a^2 + (2/3) beta (pi n / 2a)^2],  n >= 1.
double well_linear(double alpha, double beta, double a, int n);

// Exact square-well spectrum for beta = 0:
//   (pi n sqrt(alpha) / (2 arctan(sqrt(alpha) a)))^2.  Requires alpha > 0.
double well_beta0_exact(double alpha, double a, int n);

// a -> infinity limit of well_beta0_exact: E_n = alpha n^2 (free particle
// with position-dependent mass). Requires alpha > 0.
double well_free_limit(double alpha, int n);

} // namespace gupspec
