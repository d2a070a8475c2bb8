#pragma once

#include <optional>
#include <vector>

#include "gupspec/deformation.hpp"
#include "gupspec/problem.hpp"
#include "gupspec/quadrature.hpp"

namespace gupspec {

// One quantization condition A(E_n) = 2*pi*hbar*(n + delta).
struct QuantizationTarget {
  int n;
  double delta;
  double hbar;

  // Throws ParameterDomain unless n + delta > 0 and hbar > 0.
  QuantizationTarget(int n, double delta, double hbar);

  double target_area() const noexcept;
};

struct LevelResult {
  int n = 0;
  double energy = 0.0;
  double target_area = 0.0;
  double achieved_area = 0.0;
  std::size_t iterations = 0;       // area evaluations spent by the solver
  double area_error_estimate = 0.0; // quadrature error at the solution
};

// Limit of the phase-space area A(E) as E grows; a finite limit bounds the
// number of levels the rule can quantize.
class AreaLimit {
public:
  static AreaLimit finite(double value);
  static AreaLimit infinite() { return AreaLimit{}; }

  bool is_finite() const noexcept { return value_.has_value(); }
  double value() const { return value_.value(); }

private:
  AreaLimit() = default;
  std::optional<double> value_;
};

enum class LevelStatus { Bound, Unbound };

struct SpectrumEntry {
  int n = 0;
  LevelStatus status = LevelStatus::Bound;
  std::optional<LevelResult> level; // engaged iff Bound
  std::optional<int> n_max;         // engaged when Unbound and known
};

// Deformed phase-space area A(E) = integral over H <= E of dX dP / f(X,P),
// computed as nested one-dimensional integrals. Smooth potentials go through
// the turning-point change of variable; the square well integrates plainly.
// Strictly increasing in E.
QuadratureResult phase_area(const Problem& problem,
                            const Deformation& deformation, double energy,
                            double tol);

// The same area as the contour form -closed-integral X dP / f(P), valid when
// f does not depend on X; evaluated as
//   integral over [-P_max, P_max] of [x2(E - P^2) - x1(E - P^2)] / f(P) dP.
// Cross-checks phase_area. Throws ParameterDomain for position-dependent f.
QuadratureResult contour_area_momentum_only(const Problem& problem,
                                            const Deformation& deformation,
                                            double energy, double tol);

// Square well + quadratic family with alpha*beta > 0 has the closed form
// (2*pi/sqrt(alpha*beta)) * arcsinh(sqrt(alpha)*a); alpha*beta = 0 and the
// harmonic oscillator are unbounded. Other combinations are probed
// numerically at geometrically growing energies.
AreaLimit area_limit(const Problem& problem, const Deformation& deformation);

// Solves A(E_n) = 2*pi*hbar*(n + delta) for E_n by bracket doubling followed
// by a bisection/secant hybrid, to relative tolerance tol on the energy.
// Throws NoBoundLevel when the target meets or exceeds a finite area limit.
LevelResult solve_level(const Problem& problem, const Deformation& deformation,
                        int n, double delta, double tol);

// Levels n_from..n_to in order; levels beyond the saturation bound are
// reported as Unbound entries instead of aborting the sweep.
std::vector<SpectrumEntry> spectrum(const Problem& problem,
                                    const Deformation& deformation, int n_from,
                                    int n_to, double delta, double tol);

// Largest n with 2*pi*hbar*(n + delta) below the area limit; nullopt when the
// limit is infinite. For the square well + quadratic family this is
// [arcsinh(sqrt(alpha)*a) / sqrt(alpha*beta)] at delta = 0, which reproduces
// [a/sqrt(beta)] as alpha -> 0.
std::optional<int> max_level(const Problem& problem,
                             const Deformation& deformation, double delta);

} // namespace gupspec
