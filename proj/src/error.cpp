#include "berezin/error.hpp"

#include <cstdio>

namespace berezin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotSquare: return "NotSquare";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kZeroEntry: return "ZeroEntry";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kEigensolverFailure: return "EigensolverFailure";
    case ErrorKind::kThetaDegenerate: return "ThetaDegenerate";
    case ErrorKind::kNotApplicable: return "NotApplicable";
    case ErrorKind::kNotSkewHermitian: return "NotSkewHermitian";
    case ErrorKind::kNotTangent: return "NotTangent";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {
std::string deviation_message(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |UU* - Id| = %.3e", d);
  return buf;
}
}  // namespace

NotUnitaryError::NotUnitaryError(double max_deviation)
    : Error(ErrorKind::kNotUnitary, deviation_message(max_deviation)),
      max_deviation_(max_deviation) {}

}  // namespace berezin
