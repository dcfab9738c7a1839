#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berezin/matrix_core.hpp"

namespace berezin {

struct CheckResult {
  std::string name;
  Eigen::Index n = 0;
  double deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string error;  // set when the check could not run (e.g. ThetaDegenerate)
};

struct VerifyOptions {
  std::vector<Eigen::Index> sizes{2, 3, 4, 5};
  Complex theta{0.0, 1.0};
  std::uint64_t seed = 42;
  // Replaces every per-check tolerance when set.
  std::optional<double> tol;
  Eigen::Index trials = 20;
};

// Runs the property suite of every module at each size.
std::vector<CheckResult> verify_all(const VerifyOptions& options);

}  // namespace berezin
