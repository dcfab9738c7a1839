#pragma once

#include <array>
#include <vector>

#include "berezin/symbol_calculus.hpp"

namespace berezin {

// epsilon(k) = exp(2 pi i k / n), with k reduced mod n first.
Complex root_of_unity(Eigen::Index n, long long k);

struct FourierMatrix {
  Eigen::Index n = 0;
  UnitaryMatrix matrix;  // u_kl = epsilon(kl) / sqrt(n)
};

FourierMatrix build_fourier(Eigen::Index n);

// u_kl = delta_kl + (theta - 1)/n, |theta| = 1, theta != +-1.
struct Example2Matrix {
  Eigen::Index n = 0;
  Complex theta;
  UnitaryMatrix matrix;
};

// theta must have modulus 1 within 1e-8 (it is then renormalized); throws
// ThetaDegenerate when |theta -+ 1| < 1e-8.
Example2Matrix build_example2(Eigen::Index n, Complex theta);

// Phase operators W_r (multiplication by epsilon(rk)) and shifts Z_r
// ((Z_r phi)_k = phi_{k+r}) on F(Z/n).
class PhaseShiftOps {
 public:
  explicit PhaseShiftOps(Eigen::Index n) : n_(n) {}

  Eigen::Index n() const { return n_; }
  ComplexMatrix W(long long r) const;
  ComplexMatrix Z(long long r) const;

 private:
  Eigen::Index n_;
};

struct WeylCheck {
  double weyl = 0.0;         // max ||Z_s W_r - epsilon(rs) W_r Z_s||
  double conjugation = 0.0;  // max of ||F* W_r F - Z_{-r}||, ||F* Z_r F - W_r||
  double max() const { return std::max(weyl, conjugation); }
};

WeylCheck check_weyl_relations(Eigen::Index n);

struct FourierEigenReport {
  Eigen::Index n = 0;
  double max_residual = 0.0;                 // max ||I_u f - epsilon(rs) f||_u
  Eigen::Index zero_product_pairs = 0;       // #{(r,s): rs = 0 mod n}
  Eigen::Index multiplicity_of_one = 0;      // from the spectral module
  bool consistent() const { return zero_product_pairs == multiplicity_of_one; }
};

// Residuals for all characters epsilon(rk + sl) and the pair-count comparison.
FourierEigenReport fourier_eigenfunction_check(Eigen::Index n);

// A permutation of {0..n-1}; perm[i] = sigma(i).
using Permutation = std::vector<Eigen::Index>;

Permutation identity_permutation(Eigen::Index n);
Permutation inverse(const Permutation& p);
Permutation random_permutation(Eigen::Index n, std::mt19937_64& rng);

// (S_sigma phi)_k = phi_{sigma^{-1}(k)} as a matrix.
ComplexMatrix permutation_operator(const Permutation& sigma);
// (R_sigma f)_kl = f_{sigma^{-1}(k) sigma^{-1}(l)}.
SymbolFunction permute_symbol(const Permutation& sigma, const SymbolFunction& f);

// (R_(s,t) f)_kl = f_{k+t, l-s}, indices mod n.
SymbolFunction shift_symbol(long long s, long long t, const SymbolFunction& f);

// Max over (k,l) of |a_k u_{g^{-1}k, g^{-1}l} conj(b_l) - u_kl| where
// inv_k[k] = g^{-1}k and inv_l[l] = g^{-1}l.
double intertwining_deviation(const UnitaryMatrix& u, const Permutation& inv_k,
                              const Permutation& inv_l, const ComplexVector& a,
                              const ComplexVector& b);

struct EquivarianceReport {
  double c_map = 0.0;        // ||C_u(R f) - S C_u(f) S*||
  double d_map = 0.0;        // same for D_u
  double commutation = 0.0;  // ||I_u R f - R I_u f||_u
  double unitarity = 0.0;    // |<R f, R g>_u - <f, g>_u|
  double intertwining = 0.0; // matrix-level intertwining identity
  double max() const;
};

EquivarianceReport check_equivariance_example2(Eigen::Index n, Complex theta, Eigen::Index trials,
                                               RngSeed seed);

// Fourier matrix with the Heisenberg-type action: S = W_s Z_t on F(K) and
// shifts R_(s,t) on F(M). Every one of the n^2 shifts is tested against
// `trials` random symbols.
EquivarianceReport check_equivariance_fourier(Eigen::Index n, Eigen::Index trials, RngSeed seed);

struct IsotypicDecomposition {
  Eigen::Index n = 0;
  // Projectors onto V1..V4, orthogonal in <.,.>_u of the example matrix.
  std::array<ComplexMatrix, 4> projectors;
  std::array<Eigen::Index, 4> ranks{};
  // Projector onto E and the ranks of V1, V2 intersected with E-perp.
  ComplexMatrix e_projector;
  Eigen::Index v1_perp_rank = 0;
  Eigen::Index v2_perp_rank = 0;
};

// Throws NotApplicable for n < 3.
IsotypicDecomposition isotypic_projectors(const Example2Matrix& ex);

// Spanning sets for V1..V4 (flattened), before orthonormalization.
std::array<std::vector<ComplexVector>, 4> isotypic_spanning_sets(Eigen::Index n);

}  // namespace berezin
