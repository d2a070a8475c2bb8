#include "gupspec/deformation.hpp"

#include <array>
#include <cmath>

#include "gupspec/errors.hpp"

namespace gupspec {

Deformation Deformation::quadratic_gup(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0))
    throw ParameterDomain("quadratic deformation requires alpha >= 0 and beta >= 0");
  return Deformation(Variant{QuadraticGup{alpha, beta}});
}

Deformation Deformation::from_expression(Expression g) {
  const auto& vars = g.variables();
  if (vars.size() != 2 || vars[0] != "X" || vars[1] != "P")
    throw ParameterDomain("deformation expression must be declared over {X, P}");
  const bool uses_x = g.uses_variable(0);
  const bool uses_p = g.uses_variable(1);
  if (uses_p && !uses_x)
    return Deformation(Variant{MomentumOnly{std::move(g)}});
  if (uses_x && !uses_p)
    return Deformation(Variant{PositionOnly{std::move(g)}});
  return Deformation(Variant{Custom{std::move(g)}});
}

const Expression* Deformation::expression() const noexcept {
  if (const auto* m = std::get_if<MomentumOnly>(&kind_)) return &m->g;
  if (const auto* p = std::get_if<PositionOnly>(&kind_)) return &p->g;
  if (const auto* c = std::get_if<Custom>(&kind_)) return &c->g;
  return nullptr;
}

double Deformation::eval_f(double x, double p) const {
  if (const auto* q = std::get_if<QuadraticGup>(&kind_))
    return 1.0 + q->alpha * x * x + q->beta * p * p;
  const std::array<double, 2> values = {x, p};
  const double f = expression()->evaluate(std::span<const double>(values));
  if (!(f > 0.0)) throw PositivityViolation(x, p, f);
  return f;
}

QuadratureResult Deformation::inner_momentum_integral(double x, double p_max,
                                                      double tol) const {
  if (!(p_max >= 0.0))
    throw ParameterDomain("inner_momentum_integral: requires p_max >= 0");

  if (const auto* q = std::get_if<QuadraticGup>(&kind_)) {
    const double c = 1.0 + q->alpha * x * x;
    double value;
    if (q->beta > 0.0)
      value = 2.0 / std::sqrt(q->beta * c) *
              std::atan(std::sqrt(q->beta / c) * p_max);
    else
      value = 2.0 * p_max / c;
    return QuadratureResult{value, 0.0, 1};
  }

  if (p_max == 0.0) return QuadratureResult{0.0, 0.0, 1};
  return integrate_adaptive(
      [this, x](double p) { return 1.0 / eval_f(x, p); }, -p_max, p_max, tol);
}

bool Deformation::is_quadratic_gup() const noexcept {
  return std::holds_alternative<QuadraticGup>(kind_);
}

const QuadraticGup* Deformation::as_quadratic_gup() const noexcept {
  return std::get_if<QuadraticGup>(&kind_);
}

bool Deformation::independent_of_position() const noexcept {
  if (const auto* q = std::get_if<QuadraticGup>(&kind_)) return q->alpha == 0.0;
  return std::holds_alternative<MomentumOnly>(kind_);
}

void Deformation::require_positive_on_box(double x_lo, double x_hi,
                                          double p_max) const {
  if (is_quadratic_gup()) return;

  constexpr int kGrid = 64;
  const double dx = (x_hi - x_lo) / (kGrid - 1);
  const double dp = 2.0 * p_max / (kGrid - 1);
  for (int i = 0; i < kGrid; ++i) {
    const double x = x_lo + i * dx;
    for (int j = 0; j < kGrid; ++j)
      (void)eval_f(x, -p_max + j * dp); // throws if not positive
  }
  // Grid endpoints may miss the exact corners when the spacing is inexact.
  for (double x : {x_lo, x_hi})
    for (double p : {-p_max, p_max})
      (void)eval_f(x, p);
}

bool Deformation::parity_even_sampled(double x_max, double p_max) const {
  constexpr int kGrid = 17;
  const double dx = 2.0 * x_max / (kGrid - 1);
  const double dp = 2.0 * p_max / (kGrid - 1);
  for (int i = 0; i < kGrid; ++i) {
    const double x = -x_max + i * dx;
    for (int j = 0; j < kGrid; ++j) {
      const double p = -p_max + j * dp;
      const double f = eval_f(x, p);
      const double scale = std::fabs(f) + 1.0;
      if (std::fabs(f - eval_f(-x, p)) > 1e-12 * scale) return false;
      if (std::fabs(f - eval_f(x, -p)) > 1e-12 * scale) return false;
    }
  }
  return true;
}

double min_position_uncertainty(double alpha, double beta, double hbar) {
  if (!(alpha >= 0.0) || !(beta >= 0.0))
    throw ParameterDomain("uncertainties require alpha >= 0 and beta >= 0");
  const double h2ab = hbar * hbar * alpha * beta;
  if (h2ab >= 1.0)
    throw ParameterDomain("minimal uncertainties require hbar^2*alpha*beta < 1");
  return hbar * std::sqrt(beta / (1.0 - h2ab));
}

double min_momentum_uncertainty(double alpha, double beta, double hbar) {
  return min_position_uncertainty(beta, alpha, hbar);
}

double q_factor(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0))
    throw ParameterDomain("q factor requires alpha >= 0 and beta >= 0");
  const double s = std::sqrt(alpha * beta);
  if (s >= 1.0) throw ParameterDomain("q factor requires alpha*beta < 1");
  return (1.0 + s) / (1.0 - s);
}

} // namespace gupspec
