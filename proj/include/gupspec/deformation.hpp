#pragma once

#include <variant>

#include "gupspec/expression.hpp"
#include "gupspec/quadrature.hpp"

namespace gupspec {

// f(X,P) = 1 + alpha*X^2 + beta*P^2; alpha = beta = 0 is the undeformed case.
struct QuadraticGup {
  double alpha = 0.0;
  double beta = 0.0;
};

// Deformation function f(X,P) of the commutator [X,P] = i*hbar*f(X,P).
// Expression-backed variants are classified by the variables the expression
// actually uses; the quadratic family carries analytic momentum slices.
class Deformation {
public:
  static Deformation quadratic_gup(double alpha, double beta);

  // `g` must be declared over {X, P}; the variant (position-only,
  // momentum-only, fully custom) follows from which variables appear.
  static Deformation from_expression(Expression g);

  // f(X,P). Throws PositivityViolation if an expression-backed f
  // evaluates to a non-positive value at the query point.
  double eval_f(double x, double p) const;

  // Integral of dP / f(X,P) over [-p_max, +p_max] at fixed X.
  // The quadratic family uses the closed form
  //   (2/sqrt(beta*c)) * arctan(sqrt(beta/c) * p_max),  c = 1 + alpha*X^2
  // (2*p_max/c for beta = 0) and reports a zero error estimate;
  // expression-backed variants integrate adaptively at tolerance tol.
  QuadratureResult inner_momentum_integral(double x, double p_max,
                                           double tol) const;

  bool is_quadratic_gup() const noexcept;
  const QuadraticGup* as_quadratic_gup() const noexcept; // nullptr otherwise
  bool is_expression_backed() const noexcept { return !is_quadratic_gup(); }

  // True when f does not depend on X (momentum-only expression, or the
  // quadratic family with alpha = 0).
  bool independent_of_position() const noexcept;

  // Sampled check that f > 0 on [x_lo, x_hi] x [-p_max, p_max]
  // (64x64 grid plus the corners). Throws PositivityViolation on failure.
  // No-op for the quadratic family, which is positive by construction.
  void require_positive_on_box(double x_lo, double x_hi, double p_max) const;

  // Sampled check of the reflection symmetries f(X,P) = f(-X,P) = f(X,-P);
  // false means the rule's validity assumptions may not hold.
  bool parity_even_sampled(double x_max, double p_max) const;

private:
  struct MomentumOnly { Expression g; };
  struct PositionOnly { Expression g; };
  struct Custom { Expression g; };

  using Variant = std::variant<QuadraticGup, MomentumOnly, PositionOnly, Custom>;

  explicit Deformation(Variant v) : kind_(std::move(v)) {}

  const Expression* expression() const noexcept;

  Variant kind_;
};

// Minimal position uncertainty hbar*sqrt(beta/(1 - hbar^2*alpha*beta)) of
// the quadratic family. Throws ParameterDomain if hbar^2*alpha*beta >= 1.
double min_position_uncertainty(double alpha, double beta, double hbar);

// Mirror image: hbar*sqrt(alpha/(1 - hbar^2*alpha*beta)).
double min_momentum_uncertainty(double alpha, double beta, double hbar);

// (1 + sqrt(alpha*beta)) / (1 - sqrt(alpha*beta)); the geometric ratio of
// the deformed oscillator spectrum. Throws ParameterDomain if alpha*beta >= 1.
double q_factor(double alpha, double beta);

} // namespace gupspec
