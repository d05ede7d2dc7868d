#pragma once

#include <stdexcept>
#include <string>

namespace se3loss {

/// Root of the library's error taxonomy.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric failures (cut locus, singular covariance, divergence, ...).
/// The CLI maps these to exit code 3.
class NumericError : public Error {
  using Error::Error;
};

/// Malformed input files / records. The CLI maps these to exit code 2.
class InputError : public Error {
  using Error::Error;
};

class NotARotation final : public NumericError {
  using NumericError::NumericError;
};

/// Relative rotation angle at or beyond pi - margin: the Riemannian
/// logarithm is no longer unique.
class CutLocus final : public NumericError {
  using NumericError::NumericError;
};

class NotSPD final : public NumericError {
  using NumericError::NumericError;
};

class DegenerateQuat final : public NumericError {
  using NumericError::NumericError;
};

class CollinearAnchors final : public NumericError {
  using NumericError::NumericError;
};

class ReflectionDetected final : public NumericError {
  using NumericError::NumericError;
};

class SingularCovariance final : public NumericError {
  using NumericError::NumericError;
};

class NonPositiveWeight final : public NumericError {
  using NumericError::NumericError;
};

class Diverged final : public NumericError {
  using NumericError::NumericError;
};

class ZeroVariance final : public NumericError {
  using NumericError::NumericError;
};

class ParseError final : public InputError {
 public:
  ParseError(long line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class DuplicateId final : public InputError {
  using InputError::InputError;
};

class UnitsMissing final : public InputError {
  using InputError::InputError;
};

}  // namespace se3loss
