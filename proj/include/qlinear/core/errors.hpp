#pragma once

#include <stdexcept>
#include <string>

namespace qlinear {

/// Error families. The numeric values are the process exit codes used by
/// the command-line runner.
enum class ErrorClass : int {
  validation = 1,
  numerical = 2,
  precondition = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what);
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

/// Malformed input: bad parameters, unparsable configuration, inconsistent
/// device geometry.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorClass::validation, what) {}
};

/// A computation ran but produced an unusable answer (instability,
/// non-convergence, timeouts).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorClass::numerical, what) {}
};

/// Inputs are well formed but violate an operation's precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorClass::precondition, what) {}
};

/// The state (or its evolved image) does not fit on the grid. `deficit` is
/// the missing margin, in the units named by the message.
class CoverageError : public PreconditionError {
 public:
  CoverageError(const std::string& what, double deficit)
      : PreconditionError(what), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

class NormalizationError : public PreconditionError {
 public:
  NormalizationError(const std::string& what, double norm_squared)
      : PreconditionError(what), norm_squared_(norm_squared) {}
  double norm_squared() const noexcept { return norm_squared_; }

 private:
  double norm_squared_;
};

}  // namespace qlinear
