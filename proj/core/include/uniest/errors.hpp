// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "uniest/types.hpp"

namespace uniest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on dimensions, chart coordinates or arguments was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An outcome has vanishing probability but a non-vanishing probability derivative.
class SingularOutcomeError : public Error {
 public:
  SingularOutcomeError(std::string what, Index outcome)
      : Error(std::move(what)), outcome_(outcome) {}
  Index outcome() const noexcept { return outcome_; }

 private:
  Index outcome_;
};

/// The Lyapunov equation for the symmetric logarithmic derivative has no solution.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive definite is not.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::string what, double min_eigenvalue)
      : Error(std::move(what)), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// The pure-state condition Im<l_i|l_j> = 0 does not hold.
class AchievabilityError : public Error {
 public:
  AchievabilityError(std::string what, double gap) : Error(std::move(what)), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

/// The Fisher information at the requested point is singular.
class NonIdentifiableError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of iterations. Carries the best point found.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string what, RVector best) : Error(std::move(what)), best_(std::move(best)) {}
  const RVector& best() const noexcept { return best_; }

 private:
  RVector best_;
};

/// Malformed POVM or report document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace uniest
