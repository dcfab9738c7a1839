#include "berezin/submersion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "berezin/error.hpp"
#include "berezin/spectral.hpp"

namespace berezin {

SkewBasis::SkewBasis(Eigen::Index n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "SkewBasis needs n >= 1");
  const Complex i(0.0, 1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    x(k, k) = i;
    elements_.push_back(std::move(x));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      ComplexMatrix re = ComplexMatrix::Zero(n, n);
      re(k, l) = 1.0;
      re(l, k) = -1.0;
      elements_.push_back(std::move(re));
      ComplexMatrix im = ComplexMatrix::Zero(n, n);
      im(k, l) = i;
      im(l, k) = i;
      elements_.push_back(std::move(im));
    }
  }
}

double skew_hermitian_deviation(const ComplexMatrix& x) {
  return max_abs(ComplexMatrix(x + x.adjoint()));
}

ComplexMatrix random_skew_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(k, l) = Complex(re, im);
    }
  }
  return a - a.adjoint();
}

ComplexMatrix expm_skew(const ComplexMatrix& x, double t) {
  // X = i H with H Hermitian, so exp(tX) = V diag(exp(i t lambda)) V^*.
  const ComplexMatrix h = Complex(0.0, -1.0) * x;
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::kEigensolverFailure, "Hermitian eigensolver did not converge");
  }
  ComplexVector phases(x.rows());
  for (Eigen::Index j = 0; j < x.rows(); ++j) phases(j) = std::polar(1.0, t * eig.eigenvalues()(j));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

RealMatrix tangent_direction(const UnitaryMatrix& u, const ComplexMatrix& x) {
  if (x.rows() != u.n() || x.cols() != u.n()) {
    throw Error(ErrorKind::kDimensionMismatch, "tangent_direction: X must be n x n");
  }
  if (skew_hermitian_deviation(x) > 1e-12 * std::max(1.0, max_abs(x))) {
    throw Error(ErrorKind::kNotSkewHermitian, "X + X^* != 0");
  }
  const ComplexMatrix u_dot = x * u.matrix();
  return 2.0 * u_dot.cwiseProduct(u.matrix().conjugate()).real();
}

std::pair<SymbolFunction, SymbolFunction> symbol_pair_of_direction(const UnitaryMatrix& u,
                                                                   const ComplexMatrix& u_dot) {
  u.require_nonzero_entries("symbol_pair_of_direction");
  if (u_dot.rows() != u.n() || u_dot.cols() != u.n()) {
    throw Error(ErrorKind::kDimensionMismatch, "symbol_pair_of_direction: u_dot must be n x n");
  }
  const ComplexMatrix x = u_dot * u.matrix().adjoint();
  if (skew_hermitian_deviation(x) > 1e-10 * std::max(1.0, max_abs(x))) {
    throw Error(ErrorKind::kNotTangent, "u_dot u^* is not skew-Hermitian");
  }
  SymbolFunction f(ComplexMatrix(u_dot.cwiseQuotient(u.matrix())));
  // g = -conj(f) exactly.
  SymbolFunction g(ComplexMatrix(-f.values().conjugate()));
  return {std::move(f), std::move(g)};
}

RealMatrix jacobian_matrix(const UnitaryMatrix& u) {
  const Eigen::Index n = u.n();
  const SkewBasis basis(n);
  RealMatrix j(n * n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const RealMatrix p = tangent_direction(u, basis.elements()[c]);
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = 0; l < n; ++l) j(k * n + l, static_cast<Eigen::Index>(c)) = p(k, l);
    }
  }
  return j;
}

JacobianReport jacobian(const UnitaryMatrix& u) {
  u.require_nonzero_entries("jacobian");
  const Eigen::Index n = u.n();
  const RealMatrix j = jacobian_matrix(u);
  Eigen::JacobiSVD<RealMatrix> svd(j);
  const RealVector& sv = svd.singularValues();

  JacobianReport r;
  r.n = n;
  r.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  r.rank_tol = 1e-8 * top * static_cast<double>(n);
  r.rank = (sv.array() > r.rank_tol).count();
  r.kernel_dim = n * n - r.rank;
  r.berezin_multiplicity_of_one = spectrum(u).kernel_method_dim;
  r.theorem_holds = r.kernel_dim == r.berezin_multiplicity_of_one;
  r.is_submersion = r.rank == (n - 1) * (n - 1);
  return r;
}

namespace {

RealMatrix mu_along(const UnitaryMatrix& u, const ComplexMatrix& x, double t) {
  return (expm_skew(x, t) * u.matrix()).cwiseAbs2();
}

}  // namespace

double forward_difference_error(const UnitaryMatrix& u, const ComplexMatrix& x, double h) {
  const RealMatrix fd = (mu_along(u, x, h) - u.matrix().cwiseAbs2()) / h;
  return max_abs(RealMatrix(fd - tangent_direction(u, x)));
}

double central_difference_error(const UnitaryMatrix& u, const ComplexMatrix& x, double h) {
  const RealMatrix fd = (mu_along(u, x, h) - mu_along(u, x, -h)) / (2.0 * h);
  return max_abs(RealMatrix(fd - tangent_direction(u, x)));
}

double SweepReport::submersive_fraction() const {
  return evaluated == 0 ? 0.0 : static_cast<double>(submersive) / static_cast<double>(evaluated);
}

double SweepReport::theorem_holds_fraction() const {
  return evaluated == 0 ? 0.0
                        : static_cast<double>(evaluated - theorem_violations) /
                              static_cast<double>(evaluated);
}

namespace {

SweepSample run_sample(Eigen::Index n, std::size_t index, RngSeed seed) {
  SweepSample s;
  s.index = index;
  s.seed = mix_seed(seed.value, index);
  const UnitaryMatrix u = haar_random_unitary(n, RngSeed{s.seed});
  if (!u.has_nonzero_entries()) {
    s.skipped = true;
    return s;
  }
  s.report = jacobian(u);
  return s;
}

}  // namespace

SweepReport submersion_sweep(Eigen::Index n, std::size_t samples, RngSeed seed,
                             const SweepOptions& options) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "submersion_sweep needs n >= 2");
  if (samples < 1) throw Error(ErrorKind::kInvalidArgument, "submersion_sweep needs samples >= 1");

  SweepReport report;
  report.n = n;
  report.samples = samples;
  report.seed = seed.value;

  std::vector<std::optional<SweepSample>> results(samples);
  std::size_t next_to_emit = 0;
  std::mutex mu_results;
  std::atomic<std::size_t> next_index{0};
  std::exception_ptr failure;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next_index.fetch_add(1);
      if (i >= samples) return;
      SweepSample sample;
      try {
        sample = run_sample(n, i, seed);
      } catch (...) {
        std::lock_guard lock(mu_results);
        if (!failure) failure = std::current_exception();
        next_index.store(samples);
        return;
      }
      std::lock_guard lock(mu_results);
      results[i] = std::move(sample);
      while (next_to_emit < samples && results[next_to_emit]) {
        if (options.on_sample) options.on_sample(*results[next_to_emit]);
        ++next_to_emit;
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, samples);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  bool first = true;
  for (const auto& r : results) {
    if (r->skipped) {
      ++report.skipped;
      continue;
    }
    const JacobianReport& j = *r->report;
    ++report.evaluated;
    if (j.is_submersion) ++report.submersive;
    if (!j.theorem_holds) ++report.theorem_violations;
    report.min_kernel_dim = first ? j.kernel_dim : std::min(report.min_kernel_dim, j.kernel_dim);
    report.max_kernel_dim = first ? j.kernel_dim : std::max(report.max_kernel_dim, j.kernel_dim);
    first = false;
    ++report.kernel_dim_histogram[j.kernel_dim];
  }
  return report;
}

}  // namespace berezin
