#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bskernel {

// Argument outside the mathematical domain of an operation (nu <= -1/2,
// x <= 0 for gamma, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Result would not fit in a double.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Structurally invalid input (table too short, bad bracket, bad grid).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A truncated series ran out of terms before meeting its tail bound.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double last_term)
      : std::runtime_error(what), last_term_(last_term) {}

  double last_term() const noexcept { return last_term_; }

 private:
  double last_term_;
};

// A ratio functional was evaluated too close to a zero of its denominator.
class PoleProximityError : public std::runtime_error {
 public:
  PoleProximityError(const std::string& what, std::complex<double> point)
      : std::runtime_error(what), point_(point) {}

  std::complex<double> point() const noexcept { return point_; }

 private:
  std::complex<double> point_;
};

// The endpoints handed to a bisection do not bracket a sign change.
class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bskernel
