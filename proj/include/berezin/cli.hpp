#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "berezin/error.hpp"
#include "berezin/matrix_core.hpp"

namespace berezin::cli {

enum class Command { kSpectrum, kTheoremCheck, kSweep, kVerifyAll };
enum class OutputFormat { kJson, kCsv, kText };
enum class Family { kFourier, kExample2, kHaar };

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNotUnitary = 4;
inline constexpr int kExitZeroEntry = 5;

struct RunConfig {
  Command command = Command::kSpectrum;
  Family family = Family::kHaar;
  std::optional<std::string> input_path;
  Eigen::Index n = 3;
  bool n_given = false;
  Complex theta{0.0, 1.0};
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  // Unset means each check uses its own default tolerance.
  std::optional<double> tol;
  OutputFormat format = OutputFormat::kJson;
  std::optional<std::string> output_path;
  std::optional<std::string> per_sample_csv;
};

// "angle:<radians>" or "re,im"; cartesian input within 1e-8 of the unit
// circle is renormalized, anything else throws InvalidArgument.
Complex parse_theta(const std::string& text);

int exit_code_for(ErrorKind kind);

// Entry point shared by the binary and the tests; never calls exit().
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_theorem_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify_all(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace berezin::cli
