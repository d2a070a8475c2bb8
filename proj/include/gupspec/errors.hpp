#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gupspec {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Expression source text could not be parsed. offset() is the byte position
// of the offending token.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// An identifier that is neither a declared variable nor a known function.
class UnknownIdentifier : public Error {
public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : Error("unknown identifier '" + name + "' (at byte " +
              std::to_string(offset) + ")"),
        name_(name), offset_(offset) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

private:
  std::string name_;
  std::size_t offset_;
};

// Evaluation left the real domain (sqrt/ln of a negative, division by zero,
// overflow to a non-finite value).
class DomainError : public Error {
public:
  using Error::Error;
};

// A deformation function evaluated to a non-positive value.
class PositivityViolation : public Error {
public:
  PositivityViolation(double x, double p, double value)
      : Error("deformation f(X,P) is not positive: f(" + std::to_string(x) +
              ", " + std::to_string(p) + ") = " + std::to_string(value)),
        x_(x), p_(p), value_(value) {}
  double x() const noexcept { return x_; }
  double p() const noexcept { return p_; }
  double value() const noexcept { return value_; }

private:
  double x_, p_, value_;
};

// A parameter lies outside the region where a formula is defined
// (e.g. hbar^2*alpha*beta >= 1, or alpha <= 0 where a positive value is required).
class ParameterDomain : public Error {
public:
  using Error::Error;
};

// Query outside the potential's domain (square well: |X| > a).
class OutOfDomain : public Error {
public:
  using Error::Error;
};

// No classically allowed region: E does not exceed the potential minimum,
// or the allowed region is not closed inside the scan domain.
class NoAllowedRegion : public Error {
public:
  using Error::Error;
};

// The scan found more than one classically allowed interval.
class MultipleWells : public Error {
public:
  using Error::Error;
};

// Adaptive integration exhausted its evaluation budget.
class MaxSubdivisions : public Error {
public:
  explicit MaxSubdivisions(std::size_t evaluations)
      : Error("adaptive integration exceeded its evaluation budget (" +
              std::to_string(evaluations) + " evaluations)"),
        evaluations_(evaluations) {}
  std::size_t evaluations() const noexcept { return evaluations_; }

private:
  std::size_t evaluations_;
};

// The integrand returned a non-finite value.
class NonFiniteIntegrand : public Error {
public:
  explicit NonFiniteIntegrand(double abscissa)
      : Error("integrand is not finite at x = " + std::to_string(abscissa)),
        abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

private:
  double abscissa_;
};

// The quantization target meets or exceeds a finite phase-space area limit,
// so no level with this index exists.
class NoBoundLevel : public Error {
public:
  NoBoundLevel(int n, std::optional<int> n_max)
      : Error("no bound level n = " + std::to_string(n) +
              (n_max ? " (largest bound level: n_max = " + std::to_string(*n_max) + ")"
                     : " (area saturates below the target)")),
        n_(n), n_max_(n_max) {}
  int n() const noexcept { return n_; }
  std::optional<int> n_max() const noexcept { return n_max_; }

private:
  int n_;
  std::optional<int> n_max_;
};

} // namespace gupspec
