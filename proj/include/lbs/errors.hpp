#pragma once

#include <stdexcept>
#include <string>

namespace lbs {

/// Argument outside the domain of a function (spectral parameter inside the
/// band, pole abscissa of a critical curve, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Floating-point failure: non-finite values, iteration caps exceeded.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed result contradicts a structural bound (e.g. more determinant
/// zeros than the rank of the perturbation allows).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lbs
