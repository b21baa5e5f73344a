#pragma once

#include <stdexcept>
#include <string>

#include "gfp/numerics/estimate.hpp"

namespace gfp {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature or iteration ran out of budget before meeting its tolerance.
/// The best estimate obtained so far travels with the exception.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, Estimate best)
      : std::runtime_error(what), best_(std::move(best)) {}

  const Estimate& best() const noexcept { return best_; }

 private:
  Estimate best_;
};

/// Requested an exact closed form or engine that does not cover the shape.
class UnsupportedShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kernel evaluated on the diagonal x = y.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An integral that is infinite for the given arguments (e.g. K~_s at r = 0).
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace gfp
