#include "gupspec/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gupspec/errors.hpp"

namespace gupspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

// Bracket expansion gives up once the energy offset above the potential
// minimum reaches this ceiling.
constexpr double kEnergyCeiling = 1e12;

// Floor with a relative fuzz: counts derived from closed-form reals must not
// lose a level to rounding at an exactly attained integer boundary (the
// alpha -> 0 square-well count [a/sqrt(beta)] hits one).
int fuzzy_floor(double x) {
  return static_cast<int>(
      std::floor(x + 1e-9 * std::max(1.0, std::fabs(x))));
}

bool square_well_finite_family(const Problem& problem,
                               const Deformation& deformation,
                               double* limit_out) {
  const QuadraticGup* q = deformation.as_quadratic_gup();
  if (!problem.is_square_well() || q == nullptr) return false;
  if (!(q->alpha > 0.0 && q->beta > 0.0)) return false;
  const double a = problem.square_well_half_width();
  if (limit_out)
    *limit_out = 2.0 * kPi / std::sqrt(q->alpha * q->beta) *
                 std::asinh(std::sqrt(q->alpha) * a);
  return true;
}

} // namespace

QuantizationTarget::QuantizationTarget(int n_in, double delta_in,
                                       double hbar_in)
    : n(n_in), delta(delta_in), hbar(hbar_in) {
  if (!(hbar > 0.0))
    throw ParameterDomain("quantization target requires hbar > 0");
  if (!(n + delta > 0.0))
    throw ParameterDomain("quantization target requires n + delta > 0");
}

double QuantizationTarget::target_area() const noexcept {
  return 2.0 * kPi * hbar * (n + delta);
}

AreaLimit AreaLimit::finite(double value) {
  if (!(value > 0.0))
    throw ParameterDomain("finite area limit must be positive");
  AreaLimit limit;
  limit.value_ = value;
  return limit;
}

QuadratureResult phase_area(const Problem& problem,
                            const Deformation& deformation, double energy,
                            double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("phase_area: requires tol > 0");
  const Problem::TurningPoints tp = problem.turning_points(energy);
  const double p_star =
      std::sqrt(std::max(energy - problem.min_potential(), 0.0));

  if (deformation.is_expression_backed())
    deformation.require_positive_on_box(tp.x1, tp.x2, p_star);

  const double inner_tol = 0.1 * tol;
  std::size_t leaf_evaluations = 0;

  QuadratureResult outer;
  if (problem.is_square_well()) {
    outer = integrate_adaptive(
        [&](double x) {
          const QuadratureResult inner = deformation.inner_momentum_integral(
              x, problem.p_max(x, energy), inner_tol);
          leaf_evaluations += inner.evaluations;
          return inner.value;
        },
        tp.x1, tp.x2, tol);
  } else {
    // The momentum slice vanishes like sqrt at the turning points; the sine
    // map removes that endpoint behavior.
    const TurningPointMap map(tp.x1, tp.x2);
    outer = integrate_adaptive(
        [&](double theta) {
          const double x = map.x(theta);
          const QuadratureResult inner = deformation.inner_momentum_integral(
              x, problem.p_max(x, energy), inner_tol);
          leaf_evaluations += inner.evaluations;
          return inner.value * map.jacobian(theta);
        },
        -kHalfPi, kHalfPi, tol);
  }

  QuadratureResult result = outer;
  result.evaluations = leaf_evaluations;
  if (deformation.is_expression_backed()) {
    // Inner quadrature errors integrate to at most this on top of the
    // outer estimate.
    result.error_estimate +=
        inner_tol * (std::fabs(outer.value) + (tp.x2 - tp.x1));
  }
  return result;
}

QuadratureResult contour_area_momentum_only(const Problem& problem,
                                            const Deformation& deformation,
                                            double energy, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("contour_area_momentum_only: requires tol > 0");
  if (!deformation.independent_of_position())
    throw ParameterDomain(
        "contour form requires a deformation independent of X");

  const Problem::TurningPoints tp = problem.turning_points(energy);
  const double min_u = problem.min_potential();
  const double depth = energy - min_u;
  const double p_max = std::sqrt(depth);

  if (deformation.is_expression_backed())
    deformation.require_positive_on_box(tp.x1, tp.x2, p_max);

  // Width x2 - x1 of the allowed interval at the slice energy E - P^2.
  const auto slice_width = [&](double p) -> double {
    const double e_slice = energy - p * p;
    const double gap = e_slice - min_u;
    if (gap <= 1e-12 * std::max(1.0, depth)) return 0.0;
    try {
      const Problem::TurningPoints slice = problem.turning_points(e_slice);
      return slice.x2 - slice.x1;
    } catch (const NoAllowedRegion&) {
      // Scan-resolution sliver right below the momentum boundary.
      if (gap <= 1e-6 * depth) return 0.0;
      throw;
    }
  };

  if (problem.is_square_well()) {
    return integrate_adaptive(
        [&](double p) { return slice_width(p) / deformation.eval_f(0.0, p); },
        -p_max, p_max, tol);
  }
  const TurningPointMap map(-p_max, p_max);
  return integrate_adaptive(
      [&](double theta) {
        const double p = map.x(theta);
        return slice_width(p) / deformation.eval_f(0.0, p) *
               map.jacobian(theta);
      },
      -kHalfPi, kHalfPi, tol);
}

AreaLimit area_limit(const Problem& problem, const Deformation& deformation) {
  double closed_form = 0.0;
  if (square_well_finite_family(problem, deformation, &closed_form))
    return AreaLimit::finite(closed_form);
  if (deformation.is_quadratic_gup() &&
      (problem.is_square_well() || problem.is_harmonic()))
    return AreaLimit::infinite(); // alpha*beta = 0 well, or log-divergent disk

  // Numeric probe at geometrically growing energies.
  constexpr double kProbeTol = 1e-9;
  constexpr double kGrowthTol = 1e-5;
  const double min_u = problem.min_potential();
  // Stay strictly inside a bounded scan domain.
  const double cap = std::min(
      kEnergyCeiling, (problem.max_bracket_energy() - min_u) * (1.0 - 1e-9));

  double offset = std::min(1.0, 0.25 * cap);
  double previous =
      phase_area(problem, deformation, min_u + offset, kProbeTol).value;
  while (offset < cap) {
    offset = std::min(offset * 4.0, cap);
    const double area =
        phase_area(problem, deformation, min_u + offset, kProbeTol).value;
    const double growth = area - previous;
    if (growth <= kGrowthTol * std::max(1.0, area)) {
      // For a tail falling like 1/sqrt(E), the remaining area equals the
      // last quadrupling step; fold it in.
      return AreaLimit::finite(area + std::max(growth, 0.0));
    }
    previous = area;
  }
  return AreaLimit::infinite();
}

LevelResult solve_level(const Problem& problem, const Deformation& deformation,
                        int n, double delta, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("solve_level: requires tol > 0");
  const QuantizationTarget target(n, delta, problem.hbar());
  const double target_area = target.target_area();

  // The analytic square-well family saturates; refuse unreachable targets
  // before spending quadrature on them.
  double limit = 0.0;
  if (square_well_finite_family(problem, deformation, &limit) &&
      target_area >= limit)
    throw NoBoundLevel(n, max_level(problem, deformation, delta));

  const double min_u = problem.min_potential();
  const double offset_cap =
      std::min(kEnergyCeiling, problem.max_bracket_energy() - min_u);
  const double bracket_tol = std::max(1e-12, tol);

  std::size_t area_evaluations = 0;
  double e_lo = min_u;
  double f_lo = -target_area; // A(min U) = 0
  double e_hi = 0.0;
  QuadratureResult area_hi;

  double offset = 1.0;
  for (;;) {
    const bool capped = offset >= offset_cap;
    const double probe_offset =
        capped ? offset_cap * (1.0 - 1e-12) : offset;
    e_hi = min_u + probe_offset;
    area_hi = phase_area(problem, deformation, e_hi, bracket_tol);
    ++area_evaluations;
    if (area_hi.value >= target_area) break;
    if (capped)
      throw NoBoundLevel(n, std::nullopt); // area still below target at the ceiling
    e_lo = e_hi;
    f_lo = area_hi.value - target_area;
    offset *= 2.0;
  }

  // Quadrature accuracy slaved to what the root solver can resolve.
  const double slope =
      (area_hi.value - (f_lo + target_area)) / (e_hi - e_lo);
  const double area_tol_abs = std::max(
      1e-12, 0.1 * tol * std::max(1.0, std::fabs(e_hi)) * std::fabs(slope));
  const double quad_tol =
      std::max(1e-12, area_tol_abs / std::max(1.0, target_area));

  double f_hi = area_hi.value - target_area;
  double e_best = e_hi;
  QuadratureResult area_best = area_hi;

  // Illinois-damped false position with bisection fallback; A is monotone,
  // so the bracket is sound, but dA/dE can be tiny near saturation.
  int last_side = 0;
  for (int iteration = 0; iteration < 200; ++iteration) {
    const double width = e_hi - e_lo;
    if (width <= tol * std::max(1.0, std::fabs(e_hi)) &&
        std::fabs(area_best.value - target_area) <= tol * target_area)
      break;

    double e_new = 0.0;
    const double denom = f_hi - f_lo;
    if (denom != 0.0) e_new = (e_lo * f_hi - e_hi * f_lo) / denom;
    if (!(e_new > e_lo && e_new < e_hi)) e_new = e_lo + 0.5 * width;

    const QuadratureResult area_new =
        phase_area(problem, deformation, e_new, quad_tol);
    ++area_evaluations;
    const double f_new = area_new.value - target_area;
    e_best = e_new;
    area_best = area_new;

    if (f_new <= 0.0) {
      e_lo = e_new;
      f_lo = f_new;
      if (last_side == -1) f_hi *= 0.5;
      last_side = -1;
    } else {
      e_hi = e_new;
      f_hi = f_new;
      if (last_side == +1) f_lo *= 0.5;
      last_side = +1;
    }
    if (f_new == 0.0) break;
  }

  LevelResult result;
  result.n = n;
  result.energy = e_best;
  result.target_area = target_area;
  result.achieved_area = area_best.value;
  result.iterations = area_evaluations;
  result.area_error_estimate = area_best.error_estimate;
  return result;
}

std::vector<SpectrumEntry> spectrum(const Problem& problem,
                                    const Deformation& deformation, int n_from,
                                    int n_to, double delta, double tol) {
  if (n_from > n_to)
    throw std::invalid_argument("spectrum: requires n_from <= n_to");
  std::vector<SpectrumEntry> entries;
  entries.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  for (int n = n_from; n <= n_to; ++n) {
    SpectrumEntry entry;
    entry.n = n;
    try {
      entry.level = solve_level(problem, deformation, n, delta, tol);
      entry.status = LevelStatus::Bound;
    } catch (const NoBoundLevel& absent) {
      entry.status = LevelStatus::Unbound;
      entry.n_max = absent.n_max();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::optional<int> max_level(const Problem& problem,
                             const Deformation& deformation, double delta) {
  double limit_value = 0.0;
  if (square_well_finite_family(problem, deformation, &limit_value)) {
    const QuadraticGup& q = *deformation.as_quadratic_gup();
    const double a = problem.square_well_half_width();
    const double ratio = std::asinh(std::sqrt(q.alpha) * a) /
                         (problem.hbar() * std::sqrt(q.alpha * q.beta));
    return fuzzy_floor(ratio - delta);
  }
  const AreaLimit limit = area_limit(problem, deformation);
  if (!limit.is_finite()) return std::nullopt;
  return fuzzy_floor(limit.value() / (2.0 * kPi * problem.hbar()) - delta);
}

} // namespace gupspec
