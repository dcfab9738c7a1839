#pragma once

#include <vector>

#include "berezin/matrix_core.hpp"

namespace berezin {

// A function f on M = K x L, stored as the n x n grid f_kl. Flattened vectors
// use the row-major index m = k * n + l everywhere in the library.
class SymbolFunction {
 public:
  SymbolFunction() = default;
  explicit SymbolFunction(ComplexMatrix values);

  static SymbolFunction zero(Eigen::Index n);
  static SymbolFunction constant(Eigen::Index n, Complex c);
  static SymbolFunction from_flat(Eigen::Index n, const ComplexVector& flat);
  // f_kl = a_k + b_l; either vector may be empty to mean zero.
  static SymbolFunction from_row_column(const ComplexVector& a, const ComplexVector& b);

  Eigen::Index n() const { return values_.rows(); }
  const ComplexMatrix& values() const { return values_; }
  Complex operator()(Eigen::Index k, Eigen::Index l) const { return values_(k, l); }
  Complex& operator()(Eigen::Index k, Eigen::Index l) { return values_(k, l); }

  ComplexVector flat() const;
  SymbolFunction conj() const;

  SymbolFunction& operator+=(const SymbolFunction& other);
  SymbolFunction& operator-=(const SymbolFunction& other);
  SymbolFunction& operator*=(Complex c);

 private:
  ComplexMatrix values_;
};

SymbolFunction operator+(SymbolFunction a, const SymbolFunction& b);
SymbolFunction operator-(SymbolFunction a, const SymbolFunction& b);
SymbolFunction operator*(Complex c, SymbolFunction f);

SymbolFunction random_symbol(Eigen::Index n, std::mt19937_64& rng);

// (F(M), <.,.>_u): weights w_kl = |u_kl|^2.
class WeightedSpace {
 public:
  // Throws ZeroEntry unless every weight is strictly positive.
  explicit WeightedSpace(const UnitaryMatrix& u);

  Eigen::Index n() const { return weights_.rows(); }
  const RealMatrix& weights() const { return weights_; }
  const RealMatrix& sqrt_weights() const { return sqrt_weights_; }
  // sqrt_weights flattened row-major; the diagonal of the similarity W.
  const RealVector& sqrt_weights_flat() const { return sqrt_flat_; }

  Complex inner(const SymbolFunction& f, const SymbolFunction& g) const;
  double norm(const SymbolFunction& f) const;

  // Maps between F(M) with <.,.>_u and C^{n^2} with the standard product.
  ComplexVector to_standard(const ComplexVector& flat) const;
  ComplexVector from_standard(const ComplexVector& flat) const;
  // W A W^{-1}.
  ComplexMatrix conjugate_to_standard(const ComplexMatrix& op) const;

 private:
  RealMatrix weights_;
  RealMatrix sqrt_weights_;
  RealVector sqrt_flat_;
};

// <f, g>_u = sum f_kl conj(g_kl) |u_kl|^2. Throws DimensionMismatch.
Complex weighted_inner(const WeightedSpace& space, const SymbolFunction& f, const SymbolFunction& g);

// Hilbert-Schmidt product tr(X Y*).
Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y);

// x_kk' = sum_l u_kl f_kl conj(u_k'l).
ComplexMatrix c_symbol_to_operator(const UnitaryMatrix& u, const SymbolFunction& f);
// y_kk' = sum_l u_kl f_k'l conj(u_k'l).
ComplexMatrix d_symbol_to_operator(const UnitaryMatrix& u, const SymbolFunction& f);

// The unique f with C_u f = X, via f_kl = (X u)_kl / u_kl. Throws ZeroEntry.
SymbolFunction operator_to_c_symbol(const UnitaryMatrix& u, const ComplexMatrix& x);
// The unique g with D_u g = X, via g_kl = conj((X^* u)_kl / u_kl).
SymbolFunction operator_to_d_symbol(const UnitaryMatrix& u, const ComplexMatrix& x);

// Matrix of I_u = C_u^{-1} D_u acting on flattened symbols.
class BerezinOperator {
 public:
  BerezinOperator(Eigen::Index n, ComplexMatrix matrix);

  Eigen::Index n() const { return n_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  SymbolFunction apply(const SymbolFunction& f) const;

 private:
  Eigen::Index n_;
  ComplexMatrix matrix_;
};

// Production path: entries u_kl' u_k'l conj(u_k'l') / u_kl from the explicit
// kernel. Throws ZeroEntry.
BerezinOperator berezin_build(const UnitaryMatrix& u);

// Cross-check path: column (k',l') is C_u^{-1} D_u applied to the indicator of
// (k',l'). Throws ZeroEntry.
BerezinOperator berezin_compose(const UnitaryMatrix& u);

// 2n-1 symbols spanning E = {a_k + b_l}: row indicators for every k, column
// indicators for l >= 1.
std::vector<SymbolFunction> e_subspace_basis(Eigen::Index n);

// C_u f is skew-Hermitian iff f = -I_u conj(f); tests ||f + I_u conj f||_u <= tol.
bool is_skew_symbol_c(const UnitaryMatrix& u, const SymbolFunction& f, double tol);
bool is_skew_symbol_c(const BerezinOperator& op, const WeightedSpace& space,
                      const SymbolFunction& f, double tol);

// Orthogonal projector (in <.,.>_u) onto span(spanning), as an n^2 x n^2
// matrix on flattened symbols. Vectors whose standard-coordinate singular
// value is below rank_tol are dropped.
ComplexMatrix weighted_projector(const WeightedSpace& space,
                                 const std::vector<ComplexVector>& spanning,
                                 double rank_tol = 1e-9);

// Numerical rank: singular values above tol.
Eigen::Index numerical_rank(const ComplexMatrix& m, double tol);

}  // namespace berezin
