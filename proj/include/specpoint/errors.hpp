// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace specpoint {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unknown builtin, malformed expression, wrong parameter count.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A point outside the domain of a map, or a dimension mismatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An evaluator produced a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// The requested capability is not registered for this map (no exact Dini
/// provider, no Jacobian, structured map without an evaluator).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The boundary curve of a winding computation passes too close to zero.
class AdmissibilityError : public PreconditionError {
 public:
  AdmissibilityError(const std::string& what, double margin)
      : PreconditionError(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// An iterative solver failed to reach its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Failure inside a dense linear algebra routine.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace specpoint
