#ifndef PSEUDOLOGIT_ERRORS_HPP
#define PSEUDOLOGIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pseudologit {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the mathematical domain of an operation
/// (non-finite input, probability outside (0,1), nonpositive scale, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The data cannot support the requested computation: empty sample,
/// mismatched lengths, zero x-variance, fewer observations than parameters.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// A moment-based scale estimate has a nonpositive radicand.
class NonpositiveScaleError : public Error {
 public:
  using Error::Error;
};

/// The observed information matrix is not positive definite.
class SingularInformationError : public Error {
 public:
  using Error::Error;
};

/// Two optimizations that must nest produced inconsistent objective values
/// beyond numerical slack.
class OptimizerInconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Reading or parsing an input file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudologit

#endif
