#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace berezin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultUnitarityTol = 1e-10;
// |u_kl| must exceed this for u to count as having nonzero entries.
inline constexpr double kEntryFloor = 1e-12;
inline constexpr double kStochasticTol = 1e-10;

struct RngSeed {
  std::uint64_t value = 0;
};

// splitmix64 finalizer; used to derive independent per-task seeds from one
// user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Max-norm of a matrix (largest entry modulus).
double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

bool all_finite(const ComplexMatrix& m);

// A square matrix that passed the unitarity check at construction.
class UnitaryMatrix {
 public:
  // Throws NotSquare or NotUnitaryError.
  static UnitaryMatrix validate(const ComplexMatrix& m, double tol = kDefaultUnitarityTol);

  Eigen::Index n() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index k, Eigen::Index l) const { return matrix_(k, l); }

  bool has_nonzero_entries() const { return nonzero_entries_; }
  double min_abs_entry() const { return min_abs_entry_; }
  double unitarity_deviation() const { return deviation_; }

  // Throws ZeroEntry when some |u_kl| <= kEntryFloor.
  void require_nonzero_entries(const char* context) const;

 private:
  UnitaryMatrix(ComplexMatrix m, double deviation);

  ComplexMatrix matrix_;
  double deviation_ = 0.0;
  double min_abs_entry_ = 0.0;
  bool nonzero_entries_ = false;
};

// Real n x n matrix with unit row/column sums and nonnegative entries.
class DoublyStochasticMatrix {
 public:
  static DoublyStochasticMatrix validate(const RealMatrix& p, double tol = kStochasticTol);

  Eigen::Index n() const { return entries_.rows(); }
  const RealMatrix& entries() const { return entries_; }
  double operator()(Eigen::Index k, Eigen::Index l) const { return entries_(k, l); }

  // Largest |row sum - 1| or |column sum - 1|.
  double max_marginal_deviation() const;

 private:
  explicit DoublyStochasticMatrix(RealMatrix p) : entries_(std::move(p)) {}
  RealMatrix entries_;
};

UnitaryMatrix validate_unitary(const ComplexMatrix& m, double tol = kDefaultUnitarityTol);

// Haar-distributed sample from U(n): QR of a complex Ginibre matrix with the
// phases of diag(R) moved into Q.
UnitaryMatrix haar_random_unitary(Eigen::Index n, RngSeed seed);
UnitaryMatrix haar_random_unitary(Eigen::Index n, std::mt19937_64& rng);

// Diagonal unitary with independent uniform phases.
ComplexVector random_phases(Eigen::Index n, std::mt19937_64& rng);

// p_kl = |u_kl|^2.
DoublyStochasticMatrix mu(const UnitaryMatrix& u);

// kappa * u * lambda for diagonal unitaries given by their diagonals.
UnitaryMatrix apply_diagonal_phases(const ComplexVector& kappa, const UnitaryMatrix& u,
                                    const ComplexVector& lambda);

// Representative of the class {kappa u lambda} with real positive first row
// and first column. Throws ZeroEntry.
UnitaryMatrix equivalence_normal_form(const UnitaryMatrix& u);

}  // namespace berezin
