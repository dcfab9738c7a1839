#include "berezin/matrix_core.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double deviation)
    : matrix_(std::move(m)), deviation_(deviation) {
  min_abs_entry_ = matrix_.size() == 0 ? 0.0 : matrix_.cwiseAbs().minCoeff();
  nonzero_entries_ = matrix_.size() > 0 && min_abs_entry_ > kEntryFloor;
}

UnitaryMatrix UnitaryMatrix::validate(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::kNotSquare, "expected a nonempty square matrix, got " +
                                           std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
  }
  if (!all_finite(m)) throw Error(ErrorKind::kInvalidArgument, "matrix has non-finite entries");
  const ComplexMatrix gram = m * m.adjoint();
  const double deviation =
      max_abs(ComplexMatrix(gram - ComplexMatrix::Identity(m.rows(), m.cols())));
  if (!(deviation <= tol)) throw NotUnitaryError(deviation);
  return UnitaryMatrix(m, deviation);
}

void UnitaryMatrix::require_nonzero_entries(const char* context) const {
  if (!nonzero_entries_) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s needs all |u_kl| > %.0e (min is %.3e)", context,
                  kEntryFloor, min_abs_entry_);
    throw Error(ErrorKind::kZeroEntry, buf);
  }
}

UnitaryMatrix validate_unitary(const ComplexMatrix& m, double tol) {
  return UnitaryMatrix::validate(m, tol);
}

DoublyStochasticMatrix DoublyStochasticMatrix::validate(const RealMatrix& p, double tol) {
  if (p.rows() != p.cols() || p.rows() == 0) {
    throw Error(ErrorKind::kNotSquare, "doubly stochastic matrix must be square");
  }
  DoublyStochasticMatrix result(p);
  if (!(result.max_marginal_deviation() <= tol) || !(p.minCoeff() >= -tol)) {
    throw Error(ErrorKind::kInvalidArgument, "matrix is not doubly stochastic");
  }
  return result;
}

double DoublyStochasticMatrix::max_marginal_deviation() const {
  const double rows = (entries_.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (entries_.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

UnitaryMatrix haar_random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "haar_random_unitary needs n >= 1");
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    // A zero pivot has probability zero; leave the column alone in that case.
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return UnitaryMatrix::validate(q);
}

UnitaryMatrix haar_random_unitary(Eigen::Index n, RngSeed seed) {
  std::mt19937_64 rng(seed.value);
  return haar_random_unitary(n, rng);
}

ComplexVector random_phases(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  ComplexVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::polar(1.0, angle(rng));
  return d;
}

DoublyStochasticMatrix mu(const UnitaryMatrix& u) {
  RealMatrix p = u.matrix().cwiseAbs2();
  // Rows and columns of a unitary are unit vectors, so the tolerance here only
  // absorbs the unitarity slack accepted at validation.
  return DoublyStochasticMatrix::validate(p, std::max(kStochasticTol, 2 * u.unitarity_deviation()));
}

UnitaryMatrix apply_diagonal_phases(const ComplexVector& kappa, const UnitaryMatrix& u,
                                    const ComplexVector& lambda) {
  if (kappa.size() != u.n() || lambda.size() != u.n()) {
    throw Error(ErrorKind::kDimensionMismatch, "phase vectors must have length n");
  }
  ComplexMatrix m = kappa.asDiagonal() * u.matrix() * lambda.asDiagonal();
  return UnitaryMatrix::validate(m);
}

UnitaryMatrix equivalence_normal_form(const UnitaryMatrix& u) {
  u.require_nonzero_entries("equivalence_normal_form");
  const Eigen::Index n = u.n();
  const ComplexMatrix& m = u.matrix();
  ComplexVector lambda(n);
  for (Eigen::Index l = 0; l < n; ++l) lambda(l) = std::conj(m(0, l)) / std::abs(m(0, l));
  ComplexVector kappa(n);
  kappa(0) = 1.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    const Complex v = m(k, 0) * lambda(0);
    kappa(k) = std::conj(v) / std::abs(v);
  }
  ComplexMatrix out = kappa.asDiagonal() * m * lambda.asDiagonal();
  // The normalized first row/column are real by construction; drop rounding
  // residue in the imaginary parts so normalizing twice is a fixed point.
  for (Eigen::Index l = 0; l < n; ++l) out(0, l) = std::abs(m(0, l));
  for (Eigen::Index k = 1; k < n; ++k) out(k, 0) = std::abs(m(k, 0));
  return UnitaryMatrix::validate(out);
}

}  // namespace berezin
