#pragma once

#include <variant>

#include "gupspec/expression.hpp"

namespace gupspec {

// Eigenvalue problem H = P^2 + U(X) (units with 2m = 1).
//
// Built-in potentials: harmonic U(X) = X^2 (undeformed spectrum 2n+1) and the
// infinite square well U = 0 on [-a, a]. Custom potentials are expressions in
// X scanned for turning points over a user-given domain.
class Problem {
public:
  struct TurningPoints {
    double x1;
    double x2;
  };

  static Problem harmonic(double hbar = 1.0);
  static Problem square_well(double half_width, double hbar = 1.0);
  static Problem custom(Expression u, double scan_lo, double scan_hi,
                        double hbar = 1.0);

  // U(X). Square well: 0 for |X| <= a, OutOfDomain beyond the walls.
  double potential(double x) const;

  // Solutions of U(x) = E bounding the single allowed interval, x1 < x2.
  // Square well returns (-a, +a) for any E > 0. Throws NoAllowedRegion if
  // E <= min U (or the region is not closed inside the scan domain) and
  // MultipleWells if the scan finds more than one allowed interval.
  TurningPoints turning_points(double energy) const;

  // sqrt(E - U(X)); tiny negative radicands from rounding clamp to zero.
  double p_max(double x, double energy) const;

  double min_potential() const noexcept { return min_u_; }
  double hbar() const noexcept { return hbar_; }

  // Maslov-type offset fixed by the undeformed limit: 1/2 for smooth
  // potentials, 0 for the square well.
  double default_delta() const noexcept;

  // Square-well levels are indexed from 1 (n = 0 would be the empty state).
  int first_level_index() const noexcept;

  bool is_square_well() const noexcept;
  bool is_harmonic() const noexcept;
  bool is_custom() const noexcept;
  double square_well_half_width() const; // requires is_square_well()

  // Largest energy whose turning points are certain to lie inside the scan
  // domain; +infinity for the built-ins.
  double max_bracket_energy() const noexcept;

private:
  struct Harmonic {};
  struct SquareWell {
    double half_width;
  };
  struct Custom {
    Expression u;
    double scan_lo;
    double scan_hi;
  };

  using Variant = std::variant<Harmonic, SquareWell, Custom>;

  Problem(Variant v, double hbar);

  double evaluate_custom(const Custom& c, double x) const;

  Variant potential_;
  double hbar_;
  double min_u_ = 0.0;
  double max_bracket_energy_ = 0.0;
};

} // namespace gupspec
