#pragma once

#include <string>
#include <vector>

#include "berezin/symbol_calculus.hpp"

namespace berezin {

inline constexpr double kClusterTolFloor = 1e-8;

struct EigenCluster {
  Complex value;  // representative (first member after angular sort)
  Eigen::Index multiplicity = 0;
  double spread = 0.0;  // max |member - representative|
};

struct SpectralSummary {
  Eigen::Index n = 0;
  std::vector<Complex> eigenvalues;     // sorted by angle
  std::vector<int> cluster_of;          // cluster id per eigenvalue
  std::vector<EigenCluster> clusters;
  // Size of the cluster containing 1.
  Eigen::Index multiplicity_of_one = 0;
  // Singular values of (W I_u W^{-1} - Id) below 1e-8 * n. Authoritative.
  Eigen::Index kernel_method_dim = 0;
  double cluster_tol = kClusterTolFloor;
  double max_modulus_deviation = 0.0;

  // Empty when every structural invariant holds.
  std::vector<std::string> invariant_violations() const;
};

// Greedy clustering of unit-circle points: sort by angle, join a point to the
// first cluster whose representative lies within tol.
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<Complex>& values, double tol,
                                              std::vector<int>* cluster_of = nullptr);

// Full spectrum of I_u. Throws EigensolverFailure.
SpectralSummary spectrum(const BerezinOperator& op, const WeightedSpace& space,
                         double tol = kClusterTolFloor);
SpectralSummary spectrum(const UnitaryMatrix& u, double tol = kClusterTolFloor);

// dim ker(W I_u W^{-1} - value * Id), counting singular values below rank_tol.
Eigen::Index kernel_dimension_at(const BerezinOperator& op, const WeightedSpace& space,
                                 Complex value, double rank_tol);

struct EigenspaceOfOne {
  // Orthonormal in <.,.>_u.
  std::vector<SymbolFunction> basis;
  // Real-valued eigenfunctions, orthonormal in <.,.>_u; same count as basis.
  std::vector<SymbolFunction> real_basis;
  // i * real_basis.
  std::vector<SymbolFunction> imaginary_basis;
};

EigenspaceOfOne eigenspace_of_one(const BerezinOperator& op, const WeightedSpace& space,
                                  double tol = kClusterTolFloor);

struct TableRow {
  std::string label;            // "E", "V1", ... or "V3+V4" when merged
  Complex predicted;
  Eigen::Index predicted_multiplicity = 0;
  Eigen::Index observed_multiplicity = 0;
  double max_deviation = 0.0;   // max |eigenvalue - predicted| over matched members
  bool matched = false;
};

struct TableReport {
  Eigen::Index n = 0;
  Complex theta;
  std::vector<TableRow> rows;
  Eigen::Index multiplicity_of_one = 0;
  Eigen::Index unmatched_eigenvalues = 0;
  bool all_match = false;
};

// Predicted (eigenvalue, multiplicity) pairs for the permutation-symmetric
// example u_kl = delta_kl + (theta - 1)/n, in the order E, V1, V2, V3, V4.
std::vector<TableRow> example2_predicted_table(Eigen::Index n, Complex theta);

// Builds the example matrix, computes its spectrum and matches every predicted
// cluster. Throws ThetaDegenerate for theta near +-1 and NotApplicable for n < 3.
TableReport verify_spectrum_against_table(Eigen::Index n, Complex theta,
                                          double tol = kClusterTolFloor);

}  // namespace berezin
