#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berezin {

enum class ErrorKind {
  kNotSquare,
  kNotUnitary,
  kZeroEntry,
  kDimensionMismatch,
  kEigensolverFailure,
  kThetaDegenerate,
  kNotApplicable,
  kNotSkewHermitian,
  kNotTangent,
  kInvalidArgument,
  kParse,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a matrix fails the unitarity check; carries the observed
// max-norm deviation of U*U^H from the identity.
class NotUnitaryError : public Error {
 public:
  explicit NotUnitaryError(double max_deviation);

  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

}  // namespace berezin
