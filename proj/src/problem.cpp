#include "gupspec/problem.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gupspec/errors.hpp"

namespace gupspec {

namespace {
constexpr int kScanPoints = 1024;
constexpr double kBisectTol = 1e-14;
} // namespace

Problem::Problem(Variant v, double hbar)
    : potential_(std::move(v)), hbar_(hbar) {
  if (!(hbar_ > 0.0)) throw ParameterDomain("hbar must be positive");

  max_bracket_energy_ = std::numeric_limits<double>::infinity();
  if (const auto* c = std::get_if<Custom>(&potential_)) {
    if (!(c->scan_lo < c->scan_hi))
      throw ParameterDomain("scan domain must satisfy lo < hi");
    // Coarse scan for the well bottom; the bracket cap keeps turning points
    // inside the scan domain.
    min_u_ = std::numeric_limits<double>::infinity();
    const double dx = (c->scan_hi - c->scan_lo) / kScanPoints;
    for (int i = 0; i <= kScanPoints; ++i) {
      const double x = c->scan_lo + i * dx;
      const double u = evaluate_custom(*c, x);
      if (u < min_u_) min_u_ = u;
    }
    max_bracket_energy_ = std::min(evaluate_custom(*c, c->scan_lo),
                                   evaluate_custom(*c, c->scan_hi));
  } else if (const auto* w = std::get_if<SquareWell>(&potential_)) {
    if (!(w->half_width > 0.0))
      throw ParameterDomain("square well half-width must be positive");
  }
}

Problem Problem::harmonic(double hbar) { return Problem(Variant{Harmonic{}}, hbar); }

Problem Problem::square_well(double half_width, double hbar) {
  return Problem(Variant{SquareWell{half_width}}, hbar);
}

Problem Problem::custom(Expression u, double scan_lo, double scan_hi,
                        double hbar) {
  const auto& vars = u.variables();
  if (vars.size() != 1 || vars[0] != "X")
    throw ParameterDomain("potential expression must be declared over {X}");
  return Problem(Variant{Custom{std::move(u), scan_lo, scan_hi}}, hbar);
}

double Problem::evaluate_custom(const Custom& c, double x) const {
  const std::array<double, 1> values = {x};
  return c.u.evaluate(std::span<const double>(values));
}

double Problem::potential(double x) const {
  if (std::holds_alternative<Harmonic>(potential_)) return x * x;
  if (const auto* w = std::get_if<SquareWell>(&potential_)) {
    if (std::fabs(x) > w->half_width)
      throw OutOfDomain("square well queried outside [-a, a]");
    return 0.0;
  }
  return evaluate_custom(std::get<Custom>(potential_), x);
}

Problem::TurningPoints Problem::turning_points(double energy) const {
  if (std::holds_alternative<Harmonic>(potential_)) {
    if (!(energy > 0.0))
      throw NoAllowedRegion("harmonic oscillator requires E > 0");
    const double r = std::sqrt(energy);
    return {-r, r};
  }
  if (const auto* w = std::get_if<SquareWell>(&potential_)) {
    if (!(energy > 0.0)) throw NoAllowedRegion("square well requires E > 0");
    return {-w->half_width, w->half_width};
  }

  const auto& c = std::get<Custom>(potential_);
  if (!(energy > min_u_))
    throw NoAllowedRegion("E does not exceed the potential minimum");

  // Sign-change scan of U(X) - E, then bisection on each crossing.
  const double dx = (c.scan_hi - c.scan_lo) / kScanPoints;
  std::vector<std::pair<double, double>> brackets;
  double x_prev = c.scan_lo;
  double g_prev = evaluate_custom(c, x_prev) - energy;
  for (int i = 1; i <= kScanPoints; ++i) {
    const double x = c.scan_lo + i * dx;
    const double g = evaluate_custom(c, x) - energy;
    if ((g_prev <= 0.0) != (g <= 0.0)) brackets.emplace_back(x_prev, x);
    x_prev = x;
    g_prev = g;
  }

  if (brackets.size() > 2)
    throw MultipleWells("potential has more than one allowed interval at this energy");
  if (brackets.size() < 2)
    throw NoAllowedRegion(
        "allowed region is not closed inside the scan domain");

  std::array<double, 2> roots;
  for (int k = 0; k < 2; ++k) {
    double lo = brackets[k].first;
    double hi = brackets[k].second;
    double g_lo = evaluate_custom(c, lo) - energy;
    while (hi - lo > kBisectTol) {
      const double mid = 0.5 * (lo + hi);
      if (!(lo < mid && mid < hi)) break;
      const double g_mid = evaluate_custom(c, mid) - energy;
      if ((g_lo <= 0.0) == (g_mid <= 0.0)) {
        lo = mid;
        g_lo = g_mid;
      } else {
        hi = mid;
      }
    }
    roots[k] = 0.5 * (lo + hi);
  }
  return {roots[0], roots[1]};
}

double Problem::p_max(double x, double energy) const {
  const double radicand = energy - potential(x);
  // Turning-point evaluations land within rounding of zero; clamp.
  if (radicand <= 0.0) return 0.0;
  return std::sqrt(radicand);
}

double Problem::default_delta() const noexcept {
  return is_square_well() ? 0.0 : 0.5;
}

int Problem::first_level_index() const noexcept {
  return is_square_well() ? 1 : 0;
}

bool Problem::is_square_well() const noexcept {
  return std::holds_alternative<SquareWell>(potential_);
}

bool Problem::is_harmonic() const noexcept {
  return std::holds_alternative<Harmonic>(potential_);
}

bool Problem::is_custom() const noexcept {
  return std::holds_alternative<Custom>(potential_);
}

double Problem::square_well_half_width() const {
  return std::get<SquareWell>(potential_).half_width;
}

double Problem::max_bracket_energy() const noexcept {
  return max_bracket_energy_;
}

} // namespace gupspec
