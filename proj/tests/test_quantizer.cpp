#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "gupspec/deformation.hpp"
#include "gupspec/errors.hpp"
#include "gupspec/problem.hpp"
#include "gupspec/quantizer.hpp"

using gupspec::AreaLimit;
using gupspec::Deformation;
using gupspec::Expression;
using gupspec::LevelResult;
using gupspec::LevelStatus;
using gupspec::NoBoundLevel;
using gupspec::ParameterDomain;
using gupspec::PositivityViolation;
using gupspec::Problem;
using gupspec::QuadratureResult;
using gupspec::QuantizationTarget;
using gupspec::SpectrumEntry;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Oracle: oscillator area under f = 1 + alpha X^2 + beta P^2, from reducing
// the double integral to polar form,
//   A(E) = pi * Integral_0^E du / sqrt((1+alpha u)(1+beta u))
// whose antiderivative gives the logarithm below.
double oscillator_area_closed(double alpha, double beta, double energy) {
  const double s = std::sqrt(alpha * beta);
  const double numerator = std::sqrt(alpha * (1.0 + beta * energy)) +
                           std::sqrt(beta * (1.0 + alpha * energy));
  return 2.0 * kPi / s *
         std::log(numerator / (std::sqrt(alpha) + std::sqrt(beta)));
}

// Oracle: square-well area for beta = 0,
//   A(E) = 2 sqrt(E) * Integral_{-a}^{a} dX/(1+alpha X^2)
//        = (4 sqrt(E)/sqrt(alpha)) * arctan(sqrt(alpha) a).
double well_area_beta0(double alpha, double a, double energy) {
  return 4.0 * std::sqrt(energy / alpha) * std::atan(std::sqrt(alpha) * a);
}

Deformation momentum_only(const char* source) {
  return Deformation::from_expression(Expression::parse(source, {"X", "P"}));
}

} // namespace

TEST_CASE("quantization target") {
  const QuantizationTarget t(3, 0.5, 1.0);
  CHECK(t.target_area() == doctest::Approx(7.0 * kPi).epsilon(1e-15));
  CHECK(QuantizationTarget(1, 0.5, 2.0).target_area() ==
        2.0 * QuantizationTarget(1, 0.5, 1.0).target_area());
  CHECK_THROWS_AS(QuantizationTarget(0, 0.0, 1.0), ParameterDomain);
  CHECK_THROWS_AS(QuantizationTarget(0, 0.5, 0.0), ParameterDomain);
}

TEST_CASE("phase area: undeformed disk") {
  const QuadratureResult area = gupspec::phase_area(
      Problem::harmonic(), Deformation::quadratic_gup(0.0, 0.0), 2.0, 1e-10);
  CHECK(area.value == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(area.evaluations > 0);
}

TEST_CASE("phase area: deformed oscillator against the closed form") {
  const Problem harmonic = Problem::harmonic();

  // alpha = beta = 0.1 at E = 10 reduces to (pi/alpha) ln(1+alpha E).
  const double expected_equal = kPi / 0.1 * std::log(2.0);
  const QuadratureResult equal = gupspec::phase_area(
      harmonic, Deformation::quadratic_gup(0.1, 0.1), 10.0, 1e-10);
  CHECK(equal.value == doctest::Approx(expected_equal).epsilon(1e-10));
  CHECK(equal.value == doctest::Approx(21.775861).epsilon(1e-7));
  CHECK(equal.value ==
        doctest::Approx(oscillator_area_closed(0.1, 0.1, 10.0)).epsilon(1e-10));

  // Asymmetric parameters.
  for (const auto& [alpha, beta, energy] :
       {std::tuple{0.04, 0.01, 7.0}, {0.3, 0.05, 21.0}, {0.9, 0.6, 3.0}}) {
    const QuadratureResult area = gupspec::phase_area(
        harmonic, Deformation::quadratic_gup(alpha, beta), energy, 1e-10);
    CHECK(area.value ==
          doctest::Approx(oscillator_area_closed(alpha, beta, energy))
              .epsilon(1e-9));
  }
}

TEST_CASE("phase area: square well slices") {
  const QuadratureResult area = gupspec::phase_area(
      Problem::square_well(1.0), Deformation::quadratic_gup(1.0, 0.0), 4.0,
      1e-10);
  CHECK(area.value == doctest::Approx(8.0 * std::atan(1.0)).epsilon(1e-12));
  CHECK(area.value == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(area.value ==
        doctest::Approx(well_area_beta0(1.0, 1.0, 4.0)).epsilon(1e-12));
}

TEST_CASE("phase area requires an allowed region") {
  CHECK_THROWS_AS(gupspec::phase_area(Problem::harmonic(),
                                      Deformation::quadratic_gup(0.0, 0.0),
                                      -1.0, 1e-10),
                  gupspec::NoAllowedRegion);
}

TEST_CASE("phase area checks positivity of expression deformations") {
  const Deformation narrow = Deformation::from_expression(
      Expression::parse("1 - X^2 - P^2", {"X", "P"}));
  CHECK_THROWS_AS(
      gupspec::phase_area(Problem::harmonic(), narrow, 2.0, 1e-9),
      PositivityViolation);
}

TEST_CASE("phase area is strictly increasing in E") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> par(0.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Problem problem = (trial % 2 == 0)
                                ? Problem::harmonic()
                                : Problem::square_well(width(rng));
    const Deformation deformation =
        Deformation::quadratic_gup(par(rng), par(rng));
    double previous = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double energy = 0.4 * k * k;
      const double area =
          gupspec::phase_area(problem, deformation, energy, 1e-10).value;
      CHECK(area > previous);
      previous = area;
    }
  }
}

TEST_CASE("increasing the deformation shrinks the area") {
  const Problem harmonic = Problem::harmonic();
  const double base = gupspec::phase_area(
      harmonic, Deformation::quadratic_gup(0.1, 0.1), 8.0, 1e-10).value;
  CHECK(gupspec::phase_area(harmonic, Deformation::quadratic_gup(0.3, 0.1),
                            8.0, 1e-10).value < base);
  CHECK(gupspec::phase_area(harmonic, Deformation::quadratic_gup(0.1, 0.4),
                            8.0, 1e-10).value < base);
}

TEST_CASE("contour form equals the region form for momentum-only f") {
  const Problem harmonic = Problem::harmonic();

  // Undeformed loop area pi*E.
  const QuadratureResult undeformed = gupspec::contour_area_momentum_only(
      harmonic, Deformation::quadratic_gup(0.0, 0.0), 5.0, 1e-10);
  CHECK(undeformed.value == doctest::Approx(5.0 * kPi).epsilon(1e-10));

  const Deformation f_momentum = momentum_only("1 + 0.1*P^2");
  const double contour =
      gupspec::contour_area_momentum_only(harmonic, f_momentum, 10.0, 1e-10)
          .value;
  const double region =
      gupspec::phase_area(harmonic, f_momentum, 10.0, 1e-10).value;
  CHECK(std::fabs(contour - region) <= 1e-8 * std::fabs(region));

  // Square well, f = 1 + 0.25 P^2 at E = 9: both routes equal the
  // antiderivative 2a * (2/sqrt(beta)) arctan(sqrt(beta) sqrt(E)).
  const Problem well = Problem::square_well(2.0);
  const Deformation f_well = momentum_only("1 + 0.25*P^2");
  const double analytic = 16.0 * std::atan(1.5);
  const double contour_well =
      gupspec::contour_area_momentum_only(well, f_well, 9.0, 1e-10).value;
  const double region_well =
      gupspec::phase_area(well, f_well, 9.0, 1e-10).value;
  CHECK(contour_well == doctest::Approx(analytic).epsilon(1e-9));
  CHECK(std::fabs(contour_well - region_well) <=
        1e-8 * std::fabs(region_well));

  CHECK_THROWS_AS(gupspec::contour_area_momentum_only(
                      harmonic, Deformation::quadratic_gup(0.1, 0.1), 5.0,
                      1e-10),
                  ParameterDomain);
}

TEST_CASE("contour/region agreement on random momentum-only cases") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> beta_dist(0.01, 1.0);
  for (int i = 0; i < 8; ++i) {
    const double beta = beta_dist(rng);
    const Deformation d = Deformation::quadratic_gup(0.0, beta);
    const Problem problem =
        (i % 2 == 0) ? Problem::harmonic() : Problem::square_well(1.5);
    for (double energy : {2.0, 7.0}) {
      const double region =
          gupspec::phase_area(problem, d, energy, 1e-10).value;
      const double contour =
          gupspec::contour_area_momentum_only(problem, d, energy, 1e-10).value;
      CAPTURE(beta);
      CHECK(std::fabs(region - contour) <= 1e-7 * std::fabs(region));
    }
  }
}

TEST_CASE("area limits") {
  const AreaLimit finite = gupspec::area_limit(
      Problem::square_well(1.0), Deformation::quadratic_gup(1.0, 0.25));
  REQUIRE(finite.is_finite());
  CHECK(finite.value() ==
        doctest::Approx(4.0 * kPi * std::asinh(1.0)).epsilon(1e-14));

  CHECK_FALSE(gupspec::area_limit(Problem::square_well(1.0),
                                  Deformation::quadratic_gup(0.0, 0.01))
                  .is_finite());
  CHECK_FALSE(gupspec::area_limit(Problem::square_well(1.0),
                                  Deformation::quadratic_gup(1.0, 0.0))
                  .is_finite());
  CHECK_FALSE(gupspec::area_limit(Problem::harmonic(),
                                  Deformation::quadratic_gup(0.1, 0.1))
                  .is_finite());
}

TEST_CASE("area limit probe for expression-backed deformations") {
  // Saturating: integral of dP/(1+0.25 P^2) over R is 2*pi, times width 2.
  const AreaLimit probed = gupspec::area_limit(Problem::square_well(1.0),
                                               momentum_only("1 + 0.25*P^2"));
  REQUIRE(probed.is_finite());
  CHECK(probed.value() == doctest::Approx(4.0 * kPi).epsilon(1e-4));

  // Undeformed f == 1 written as an expression: area grows without bound.
  const AreaLimit unbounded = gupspec::area_limit(
      Problem::square_well(1.0), momentum_only("1 + 0*P"));
  CHECK_FALSE(unbounded.is_finite());
}

TEST_CASE("solve_level reproduces the closed-form levels") {
  const double tol = 1e-9;

  const LevelResult undeformed = gupspec::solve_level(
      Problem::harmonic(), Deformation::quadratic_gup(0.0, 0.0), 3, 0.5, tol);
  CHECK(undeformed.energy == doctest::Approx(7.0).epsilon(1e-8));
  CHECK(std::fabs(undeformed.achieved_area - undeformed.target_area) <=
        tol * undeformed.target_area);
  CHECK(undeformed.iterations > 0);

  const LevelResult deformed = gupspec::solve_level(
      Problem::harmonic(), Deformation::quadratic_gup(0.1, 0.1), 0, 0.5, tol);
  CHECK(deformed.energy ==
        doctest::Approx(std::expm1(0.1) / 0.1).epsilon(1e-8));

  const LevelResult well = gupspec::solve_level(
      Problem::square_well(1.0), Deformation::quadratic_gup(1.0, 0.0), 2, 0.0,
      tol);
  CHECK(well.energy == doctest::Approx(16.0).epsilon(1e-8));
}

TEST_CASE("solve_level on a custom potential") {
  // X^2 over a wide scan domain must match the built-in harmonic result.
  const Problem custom =
      Problem::custom(Expression::parse("X^2", {"X"}), -50.0, 50.0);
  const LevelResult level = gupspec::solve_level(
      custom, Deformation::quadratic_gup(0.0, 0.0), 2, 0.5, 1e-9);
  CHECK(level.energy == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("quartic well satisfies the rule it was solved for") {
  const Problem quartic =
      Problem::custom(Expression::parse("X^4", {"X"}), -20.0, 20.0);
  const Deformation d = Deformation::quadratic_gup(0.02, 0.05);
  const LevelResult level = gupspec::solve_level(quartic, d, 1, 0.5, 1e-9);
  const double area = gupspec::phase_area(quartic, d, level.energy, 1e-11).value;
  CHECK(area == doctest::Approx(level.target_area).epsilon(1e-8));
}

TEST_CASE("saturation produces NoBoundLevel with the level count") {
  const Problem well = Problem::square_well(1.0);
  const Deformation d = Deformation::quadratic_gup(1.0, 0.25);
  try {
    gupspec::solve_level(well, d, 2, 0.0, 1e-9);
    FAIL("expected NoBoundLevel");
  } catch (const NoBoundLevel& e) {
    CHECK(e.n() == 2);
    REQUIRE(e.n_max().has_value());
    CHECK(*e.n_max() == 1);
  }
}

TEST_CASE("spectrum sweeps") {
  const auto undeformed =
      gupspec::spectrum(Problem::harmonic(),
                        Deformation::quadratic_gup(0.0, 0.0), 0, 4, 0.5, 1e-9);
  REQUIRE(undeformed.size() == 5);
  for (int n = 0; n <= 4; ++n) {
    REQUIRE(undeformed[n].status == LevelStatus::Bound);
    CHECK(undeformed[n].level->energy ==
          doctest::Approx(2.0 * n + 1.0).epsilon(1e-6));
  }

  const auto well_exact =
      gupspec::spectrum(Problem::square_well(1.0),
                        Deformation::quadratic_gup(1.0, 0.0), 1, 3, 0.0, 1e-9);
  REQUIRE(well_exact.size() == 3);
  CHECK(well_exact[0].level->energy == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(well_exact[1].level->energy == doctest::Approx(16.0).epsilon(1e-8));
  CHECK(well_exact[2].level->energy == doctest::Approx(36.0).epsilon(1e-8));

  const auto saturating = gupspec::spectrum(
      Problem::square_well(1.0), Deformation::quadratic_gup(1.0, 0.25), 1, 3,
      0.0, 1e-9);
  REQUIRE(saturating.size() == 3);
  CHECK(saturating[0].status == LevelStatus::Bound);
  CHECK(saturating[1].status == LevelStatus::Unbound);
  CHECK(saturating[2].status == LevelStatus::Unbound);
  REQUIRE(saturating[1].n_max.has_value());
  CHECK(*saturating[1].n_max == 1);

  // Energies strictly increase across bound entries.
  double previous = 0.0;
  for (const SpectrumEntry& entry : well_exact) {
    CHECK(entry.level->energy > previous);
    previous = entry.level->energy;
  }
}

TEST_CASE("bounded scan domains cap the solver instead of crashing it") {
  // X^2 scanned on [-2, 2]: only energies below U(edge) = 4 are reachable.
  const Problem narrow =
      Problem::custom(Expression::parse("X^2", {"X"}), -2.0, 2.0);
  const Deformation undeformed = Deformation::quadratic_gup(0.0, 0.0);

  const auto entries =
      gupspec::spectrum(narrow, undeformed, 0, 2, 0.5, 1e-9);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].status == LevelStatus::Bound);
  CHECK(entries[0].level->energy == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(entries[1].status == LevelStatus::Bound);
  CHECK(entries[1].level->energy == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(entries[2].status == LevelStatus::Unbound); // E_2 = 5 needs E > U(edge)

  // The probe stays inside the domain and reports unbounded growth.
  CHECK_FALSE(gupspec::area_limit(narrow, undeformed).is_finite());
}

TEST_CASE("max_level") {
  CHECK_FALSE(gupspec::max_level(Problem::harmonic(),
                                 Deformation::quadratic_gup(0.3, 0.9), 0.5)
                  .has_value());

  const auto one = gupspec::max_level(
      Problem::square_well(1.0), Deformation::quadratic_gup(1.0, 0.25), 0.0);
  REQUIRE(one.has_value());
  CHECK(*one == 1);

  // alpha -> 0 limit: [a / sqrt(beta)] even though the closed-form ratio
  // falls a hair below the integer.
  const auto ten = gupspec::max_level(
      Problem::square_well(1.0), Deformation::quadratic_gup(1e-12, 0.01), 0.0);
  REQUIRE(ten.has_value());
  CHECK(*ten == 10);
}

TEST_CASE("doubling hbar raises every level") {
  const Deformation d = Deformation::quadratic_gup(0.05, 0.02);
  for (int n = 0; n <= 3; ++n) {
    const double base =
        gupspec::solve_level(Problem::harmonic(1.0), d, n, 0.5, 1e-9).energy;
    const double doubled =
        gupspec::solve_level(Problem::harmonic(2.0), d, n, 0.5, 1e-9).energy;
    CHECK(doubled > base);
  }
}

TEST_CASE("undeformed limits reproduce the textbook spectra") {
  const Deformation tiny = Deformation::quadratic_gup(0.0, 0.0);
  for (int n = 0; n <= 5; ++n) {
    const double e =
        gupspec::solve_level(Problem::harmonic(), tiny, n, 0.5, 1e-9).energy;
    CHECK(std::fabs(e - (2.0 * n + 1.0)) <= 1e-6 * (2.0 * n + 1.0));
  }
  for (double a : {0.5, 2.0}) {
    for (int n = 1; n <= 4; ++n) {
      const double e =
          gupspec::solve_level(Problem::square_well(a), tiny, n, 0.0, 1e-9)
              .energy;
      const double expected = std::pow(kPi * n / (2.0 * a), 2);
      CHECK(std::fabs(e - expected) <= 1e-6 * expected);
    }
  }
}

TEST_CASE("solve_level is deterministic") {
  const Problem well = Problem::square_well(1.3);
  const Deformation d = Deformation::quadratic_gup(0.2, 0.1);
  const LevelResult a = gupspec::solve_level(well, d, 2, 0.0, 1e-9);
  const LevelResult b = gupspec::solve_level(well, d, 2, 0.0, 1e-9);
  CHECK(std::memcmp(&a.energy, &b.energy, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.achieved_area, &b.achieved_area, sizeof(double)) == 0);
  CHECK(a.iterations == b.iterations);
}
