#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "berezin/symbol_calculus.hpp"

namespace berezin {

// Real-linear basis of the skew-Hermitian n x n matrices: i E_kk, then for
// each k < l the pair E_kl - E_lk, i (E_kl + E_lk).
class SkewBasis {
 public:
  explicit SkewBasis(Eigen::Index n);

  Eigen::Index n() const { return n_; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  Eigen::Index n_;
  std::vector<ComplexMatrix> elements_;
};

double skew_hermitian_deviation(const ComplexMatrix& x);

// Uniformly scaled random skew-Hermitian matrix A - A^* with Gaussian A.
ComplexMatrix random_skew_hermitian(Eigen::Index n, std::mt19937_64& rng);

// exp(t X) for skew-Hermitian X through the Hermitian eigendecomposition of -iX.
ComplexMatrix expm_skew(const ComplexMatrix& x, double t = 1.0);

// d/dt |u(t)_kl|^2 at t = 0 for u(t) = exp(tX) u:  2 Re((X u)_kl conj(u_kl)).
// Throws NotSkewHermitian when ||X + X^*|| > 1e-12 (scaled by max(1, ||X||)).
RealMatrix tangent_direction(const UnitaryMatrix& u, const ComplexMatrix& x);

// C- and D-symbols of X = u_dot u^*: f = u_dot / u, g = -conj(u_dot) / conj(u).
// Throws ZeroEntry, or NotTangent when u_dot u^* is not skew-Hermitian.
std::pair<SymbolFunction, SymbolFunction> symbol_pair_of_direction(const UnitaryMatrix& u,
                                                                   const ComplexMatrix& u_dot);

struct JacobianReport {
  Eigen::Index n = 0;
  std::vector<double> singular_values;  // descending
  double rank_tol = 0.0;
  Eigen::Index rank = 0;
  Eigen::Index kernel_dim = 0;
  Eigen::Index berezin_multiplicity_of_one = 0;
  bool theorem_holds = false;
  bool is_submersion = false;
};

// Real n^2 x n^2 Jacobian of mu at u, columns indexed by SkewBasis.
RealMatrix jacobian_matrix(const UnitaryMatrix& u);

// Rank/kernel of the Jacobian against the multiplicity of 1 of I_u.
// Throws ZeroEntry.
JacobianReport jacobian(const UnitaryMatrix& u);

// max-norm error of the forward difference (mu(exp(hX) u) - mu(u)) / h
// against tangent_direction(u, X).
double forward_difference_error(const UnitaryMatrix& u, const ComplexMatrix& x, double h);
// Same with the central difference (mu(exp(hX) u) - mu(exp(-hX) u)) / 2h.
double central_difference_error(const UnitaryMatrix& u, const ComplexMatrix& x, double h);

struct SweepSample {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool skipped = false;  // an entry fell below the entry floor
  std::optional<JacobianReport> report;
};

struct SweepReport {
  Eigen::Index n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t skipped = 0;
  std::size_t evaluated = 0;
  std::size_t submersive = 0;
  std::size_t theorem_violations = 0;
  Eigen::Index min_kernel_dim = 0;
  Eigen::Index max_kernel_dim = 0;
  std::map<Eigen::Index, std::size_t> kernel_dim_histogram;

  double submersive_fraction() const;
  double theorem_holds_fraction() const;
};

struct SweepOptions {
  std::size_t threads = 1;
  // Invoked once per sample, strictly in index order, from whichever worker
  // completes the next pending index. Calls never overlap.
  std::function<void(const SweepSample&)> on_sample;
};

// Seed of sample i is mix_seed(seed, i), so results do not depend on the
// number of workers or their scheduling.
SweepReport submersion_sweep(Eigen::Index n, std::size_t samples, RngSeed seed,
                             const SweepOptions& options = {});

}  // namespace berezin
