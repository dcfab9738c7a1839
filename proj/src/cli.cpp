#include "berezin/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "berezin/json_io.hpp"
#include "berezin/spectral.hpp"
#include "berezin/submersion.hpp"
#include "berezin/symmetry.hpp"
#include "berezin/verify.hpp"

namespace berezin::cli {

Complex parse_theta(const std::string& text) {
  constexpr std::string_view kAngle = "angle:";
  try {
    if (text.rfind(kAngle, 0) == 0) {
      std::size_t used = 0;
      const std::string rest = text.substr(kAngle.size());
      const double a = std::stod(rest, &used);
      if (used != rest.size() || !std::isfinite(a)) throw std::invalid_argument(text);
      return std::polar(1.0, a);
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_re = 0;
    std::size_t used_im = 0;
    const std::string re_s = text.substr(0, comma);
    const std::string im_s = text.substr(comma + 1);
    const double re = std::stod(re_s, &used_re);
    const double im = std::stod(im_s, &used_im);
    if (used_re != re_s.size() || used_im != im_s.size()) throw std::invalid_argument(text);
    const Complex z(re, im);
    if (!(std::abs(std::abs(z) - 1.0) <= 1e-8)) {
      throw Error(ErrorKind::kInvalidArgument, "theta " + text + " is not on the unit circle");
    }
    return z / std::abs(z);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::kInvalidArgument,
                "theta must be \"re,im\" or \"angle:<radians>\", got \"" + text + "\"");
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
    case ErrorKind::kParse:
    case ErrorKind::kNotSquare:
      return kExitInput;
    case ErrorKind::kNotUnitary:
      return kExitNotUnitary;
    case ErrorKind::kZeroEntry:
      return kExitZeroEntry;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kThetaDegenerate:
    case ErrorKind::kNotApplicable:
      return kExitUsage;
    default:
      return kExitInvariant;
  }
}

namespace {

std::string family_name(const RunConfig& c) {
  if (c.input_path) return "file";
  switch (c.family) {
    case Family::kFourier: return "fourier";
    case Family::kExample2: return "example2";
    case Family::kHaar: return "haar";
  }
  return "?";
}

UnitaryMatrix load_matrix(const RunConfig& c) {
  if (c.input_path) return validate_unitary(read_complex_matrix_file(*c.input_path));
  switch (c.family) {
    case Family::kFourier: return build_fourier(c.n).matrix;
    case Family::kExample2: return build_example2(c.n, c.theta).matrix;
    case Family::kHaar: return haar_random_unitary(c.n, RngSeed{c.seed});
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family");
}

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  Sink(const RunConfig& c, std::ostream& fallback) : stream_(&fallback) {
    if (c.output_path) {
      file_ = std::make_unique<std::ofstream>(*c.output_path);
      if (!*file_) throw Error(ErrorKind::kIo, "cannot write " + *c.output_path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Json source_json(const RunConfig& c, const UnitaryMatrix& u) {
  Json j;
  j["family"] = family_name(c);
  j["n"] = u.n();
  if (!c.input_path && c.family == Family::kExample2) j["theta"] = complex_to_json(c.theta);
  if (!c.input_path && c.family == Family::kHaar) j["seed"] = c.seed;
  return j;
}

Json summary_json(const SpectralSummary& s) {
  Json eig = Json::array();
  for (const Complex z : s.eigenvalues) eig.push_back(complex_to_json(z));
  Json clusters = Json::array();
  for (const auto& c : s.clusters) {
    Json cj;
    cj["value"] = complex_to_json(c.value);
    cj["multiplicity"] = c.multiplicity;
    clusters.push_back(std::move(cj));
  }
  Json j;
  j["n"] = s.n;
  j["eigenvalues"] = std::move(eig);
  j["clusters"] = std::move(clusters);
  j["multiplicity_of_one"] = s.multiplicity_of_one;
  j["kernel_method_dim"] = s.kernel_method_dim;
  j["cluster_tol"] = s.cluster_tol;
  j["max_modulus_deviation"] = s.max_modulus_deviation;
  j["invariant_violations"] = s.invariant_violations();
  return j;
}

Json jacobian_json(const JacobianReport& r) {
  Json j;
  j["n"] = r.n;
  j["singular_values"] = r.singular_values;
  j["rank_tol"] = r.rank_tol;
  j["rank"] = r.rank;
  j["kernel_dim"] = r.kernel_dim;
  j["berezin_multiplicity_of_one"] = r.berezin_multiplicity_of_one;
  j["theorem_holds"] = r.theorem_holds;
  j["is_submersion"] = r.is_submersion;
  return j;
}

std::size_t sweep_threads() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BEREZIN_LAB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min<std::size_t>(threads, cap);
  }
  return threads;
}

constexpr const char* kSampleCsvHeader =
    "index,seed,skipped,rank,kernel_dim,berezin_multiplicity_of_one,theorem_holds,is_submersion";

void write_sample_row(std::ostream& os, const SweepSample& s) {
  os << s.index << ',' << s.seed << ',' << (s.skipped ? 1 : 0);
  if (s.report) {
    const JacobianReport& r = *s.report;
    os << ',' << r.rank << ',' << r.kernel_dim << ',' << r.berezin_multiplicity_of_one << ','
       << (r.theorem_holds ? 1 : 0) << ',' << (r.is_submersion ? 1 : 0);
  } else {
    os << ",,,,,";
  }
  os << '\n' << std::flush;
}

}  // namespace

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const UnitaryMatrix u = load_matrix(config);
  const SpectralSummary s = spectrum(u, config.tol.value_or(kClusterTolFloor));
  Sink sink(config, out);
  switch (config.format) {
    case OutputFormat::kJson: {
      Json j;
      j["command"] = "spectrum";
      j["source"] = source_json(config, u);
      j["summary"] = summary_json(s);
      *sink << dump_json(j) << '\n';
      break;
    }
    case OutputFormat::kCsv:
      *sink << "re,im,modulus,cluster_id\n";
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        const Complex z = s.eigenvalues[i];
        *sink << format_double(z.real()) << ',' << format_double(z.imag()) << ','
              << format_double(std::abs(z)) << ',' << s.cluster_of[i] << '\n';
      }
      break;
    case OutputFormat::kText:
      *sink << "n = " << s.n << "\n";
      for (const auto& c : s.clusters) {
        *sink << "  eigenvalue " << format_double(c.value.real()) << (c.value.imag() < 0 ? " - " : " + ")
              << format_double(std::abs(c.value.imag())) << "i  multiplicity " << c.multiplicity << '\n';
      }
      *sink << "multiplicity_of_one = " << s.multiplicity_of_one
            << "\nkernel_method_dim = " << s.kernel_method_dim << '\n';
      for (const auto& v : s.invariant_violations()) *sink << "VIOLATION: " << v << '\n';
      break;
  }
  return s.invariant_violations().empty() ? kExitOk : kExitInvariant;
}

int cmd_theorem_check(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const UnitaryMatrix u = load_matrix(config);
  const JacobianReport r = jacobian(u);
  Sink sink(config, out);
  if (config.format == OutputFormat::kJson) {
    Json j;
    j["command"] = "theorem-check";
    j["source"] = source_json(config, u);
    j["report"] = jacobian_json(r);
    *sink << dump_json(j) << '\n';
  } else if (config.format == OutputFormat::kCsv) {
    *sink << "n,rank,kernel_dim,berezin_multiplicity_of_one,theorem_holds,is_submersion\n"
          << r.n << ',' << r.rank << ',' << r.kernel_dim << ',' << r.berezin_multiplicity_of_one
          << ',' << (r.theorem_holds ? 1 : 0) << ',' << (r.is_submersion ? 1 : 0) << '\n';
  } else {
    *sink << "kernel_dim = " << r.kernel_dim << "\nberezin_multiplicity_of_one = "
          << r.berezin_multiplicity_of_one << "\nrank = " << r.rank
          << "\ntheorem_holds = " << (r.theorem_holds ? "true" : "false")
          << "\nis_submersion = " << (r.is_submersion ? "true" : "false") << '\n';
  }
  return r.theorem_holds ? kExitOk : kExitInvariant;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  if (config.samples < 1) throw Error(ErrorKind::kInvalidArgument, "--samples must be >= 1");
  Sink sink(config, out);
  std::unique_ptr<std::ofstream> sample_file;
  if (config.per_sample_csv) {
    sample_file = std::make_unique<std::ofstream>(*config.per_sample_csv);
    if (!*sample_file) throw Error(ErrorKind::kIo, "cannot write " + *config.per_sample_csv);
    *sample_file << kSampleCsvHeader << '\n';
  }
  const bool stream_rows = config.format == OutputFormat::kCsv;
  if (stream_rows) *sink << kSampleCsvHeader << '\n';

  SweepOptions options;
  options.threads = sweep_threads();
  options.on_sample = [&](const SweepSample& s) {
    if (sample_file) write_sample_row(*sample_file, s);
    if (stream_rows) write_sample_row(*sink, s);
  };
  const SweepReport r = submersion_sweep(config.n, config.samples, RngSeed{config.seed}, options);

  if (config.format == OutputFormat::kJson) {
    Json hist = Json::object();
    for (const auto& [dim, count] : r.kernel_dim_histogram) hist[std::to_string(dim)] = count;
    Json j;
    j["n"] = r.n;
    j["samples"] = r.samples;
    j["skipped"] = r.skipped;
    j["submersive_fraction"] = r.submersive_fraction();
    j["theorem_violations"] = r.theorem_violations;
    j["kernel_dim_histogram"] = std::move(hist);
    j["seed"] = r.seed;
    j["evaluated"] = r.evaluated;
    j["theorem_holds_fraction"] = r.theorem_holds_fraction();
    j["min_kernel_dim"] = r.min_kernel_dim;
    j["max_kernel_dim"] = r.max_kernel_dim;
    *sink << dump_json(j) << '\n';
  } else if (config.format == OutputFormat::kText) {
    *sink << "n = " << r.n << ", samples = " << r.samples << ", skipped = " << r.skipped
          << "\nsubmersive_fraction = " << format_double(r.submersive_fraction())
          << "\ntheorem_violations = " << r.theorem_violations << "\nkernel_dim histogram:";
    for (const auto& [dim, count] : r.kernel_dim_histogram) *sink << ' ' << dim << ':' << count;
    *sink << '\n';
  }
  return r.theorem_violations == 0 ? kExitOk : kExitInvariant;
}

int cmd_verify_all(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  VerifyOptions options;
  if (config.n_given) options.sizes = {config.n};
  options.theta = config.theta;
  options.seed = config.seed;
  options.tol = config.tol;
  const std::vector<CheckResult> results = verify_all(options);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;

  Sink sink(config, out);
  if (config.format == OutputFormat::kJson) {
    Json checks = Json::array();
    for (const auto& r : results) {
      Json j;
      j["name"] = r.name;
      j["n"] = r.n;
      j["deviation"] = r.deviation;
      j["threshold"] = r.threshold;
      j["pass"] = r.pass;
      if (!r.error.empty()) j["error"] = r.error;
      checks.push_back(std::move(j));
    }
    Json j;
    j["command"] = "verify-all";
    j["checks"] = std::move(checks);
    j["passed"] = results.size() - failed;
    j["failed"] = failed;
    *sink << dump_json(j) << '\n';
  } else if (config.format == OutputFormat::kCsv) {
    *sink << "name,n,deviation,threshold,pass,error\n";
    for (const auto& r : results) {
      *sink << r.name << ',' << r.n << ',' << format_double(r.deviation) << ','
            << format_double(r.threshold) << ',' << (r.pass ? 1 : 0) << ",\"" << r.error << "\"\n";
    }
  } else {
    char line[256];
    for (const auto& r : results) {
      std::snprintf(line, sizeof line, "%-4s %-36s n=%-3ld dev=%-12.3e thr=%-10.1e %s\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), static_cast<long>(r.n), r.deviation,
                    r.threshold, r.error.c_str());
      *sink << line;
    }
    *sink << (results.size() - failed) << " passed, " << failed << " failed\n";
  }
  return failed == 0 ? kExitOk : kExitInvariant;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operator symbols on a finite set: Berezin transform spectra and the rank of "
               "u -> (|u_kl|^2)"};
  app.require_subcommand(1);

  RunConfig config;
  std::string family = "haar";
  std::string theta_text = "angle:1.5707963267948966";
  std::string format = "json";
  long long n = 3;
  long long samples = 100;
  std::string matrix_file;
  std::string output;
  std::string per_sample_csv;
  double tol = 0.0;

  const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::kJson}, {"csv", OutputFormat::kCsv}, {"text", OutputFormat::kText}};
  const std::map<std::string, Family> families{
      {"fourier", Family::kFourier}, {"example2", Family::kExample2}, {"haar", Family::kHaar}};

  const auto add_common = [&](CLI::App* sub, bool matrix_options) {
    sub->add_option("--n", n, "Matrix size");
    sub->add_option("--theta", theta_text, "Example-2 phase: \"re,im\" or \"angle:<radians>\"");
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--tol", tol, "Tolerance (cluster radius or check threshold)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", output, "Write the report here instead of stdout");
    if (matrix_options) {
      sub->add_option("--family", family, "Built-in matrix family")
          ->check(CLI::IsMember({"fourier", "example2", "haar"}));
      sub->add_option("--matrix-file", matrix_file, "JSON matrix file {\"n\", \"entries\"}");
    }
  };

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum of the Berezin transform");
  add_common(spectrum_cmd, true);
  CLI::App* theorem_cmd =
      app.add_subcommand("theorem-check", "Jacobian kernel vs multiplicity of eigenvalue 1");
  add_common(theorem_cmd, true);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Haar-random submersion sweep");
  add_common(sweep_cmd, false);
  sweep_cmd->add_option("--samples", samples, "Number of Haar samples");
  sweep_cmd->add_option("--per-sample-csv", per_sample_csv, "Stream one CSV row per sample here");
  CLI::App* verify_cmd = app.add_subcommand("verify-all", "Run every property check");
  add_common(verify_cmd, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (active == spectrum_cmd) config.command = Command::kSpectrum;
    if (active == theorem_cmd) config.command = Command::kTheoremCheck;
    if (active == sweep_cmd) config.command = Command::kSweep;
    if (active == verify_cmd) config.command = Command::kVerifyAll;

    config.n_given = active->count("--n") > 0;
    if (n < 1) throw Error(ErrorKind::kInvalidArgument, "--n must be >= 1");
    config.n = static_cast<Eigen::Index>(n);
    if (samples < 1) throw Error(ErrorKind::kInvalidArgument, "--samples must be >= 1");
    config.samples = static_cast<std::size_t>(samples);
    if (active->count("--tol") > 0) {
      if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "--tol must be > 0");
      config.tol = tol;
    }
    config.theta = parse_theta(theta_text);
    config.format = formats.at(format);
    config.family = families.at(family);
    if (!matrix_file.empty()) config.input_path = matrix_file;
    if (!output.empty()) config.output_path = output;
    if (!per_sample_csv.empty()) config.per_sample_csv = per_sample_csv;

    switch (config.command) {
      case Command::kSpectrum: return cmd_spectrum(config, out, err);
      case Command::kTheoremCheck: return cmd_theorem_check(config, out, err);
      case Command::kSweep: return cmd_sweep(config, out, err);
      case Command::kVerifyAll: return cmd_verify_all(config, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace berezin::cli
