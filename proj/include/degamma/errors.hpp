#pragma once

#include <stdexcept>
#include <string>

namespace degamma {

/// Root of every numeric failure raised by the library.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits within pole_tolerance of a pole of the function being evaluated.
class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// |value| would exceed the double-precision range; the log-space value is still valid.
class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// 1 + lambda*t vanishes in the degenerate exponential.
class BranchPointError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// (1)_{k+1,lambda} vanishes because lambda = 1/j for some j <= k.
class SingularParameterError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ParameterRangeError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Argument lies outside the convergence strip 0 < Re(s) < 1/lambda of the defining integral.
class StripError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Integer argument hits the 1/sin(pi s) prefactor of the contour representation.
class IntegerArgumentError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace degamma
