#include "berezin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "berezin/error.hpp"
#include "berezin/symmetry.hpp"

namespace berezin {

namespace {

double kernel_rank_tol(Eigen::Index n) { return 1e-8 * static_cast<double>(n); }

Eigen::JacobiSVD<ComplexMatrix> shifted_svd(const ComplexMatrix& standard, Complex value,
                                            unsigned options) {
  ComplexMatrix shifted = standard;
  shifted.diagonal().array() -= value;
  return Eigen::JacobiSVD<ComplexMatrix>(shifted, options);
}

}  // namespace

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<Complex>& values, double tol,
                                              std::vector<int>* cluster_of) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(values[a]) < std::arg(values[b]);
  });
  std::vector<EigenCluster> clusters;
  std::vector<int> assignment(values.size(), -1);
  for (std::size_t idx : order) {
    const Complex z = values[idx];
    int hit = -1;
    // Every representative is scanned, not only the latest, so a cluster that
    // straddles the branch cut at -1 is still joined.
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (std::abs(z - clusters[c].value) <= tol) {
        hit = static_cast<int>(c);
        break;
      }
    }
    if (hit < 0) {
      clusters.push_back({z, 0, 0.0});
      hit = static_cast<int>(clusters.size() - 1);
    }
    auto& c = clusters[static_cast<std::size_t>(hit)];
    ++c.multiplicity;
    c.spread = std::max(c.spread, std::abs(z - c.value));
    assignment[idx] = hit;
  }
  if (cluster_of) *cluster_of = std::move(assignment);
  return clusters;
}

SpectralSummary spectrum(const BerezinOperator& op, const WeightedSpace& space, double tol) {
  const Eigen::Index n = op.n();
  const ComplexMatrix standard = space.conjugate_to_standard(op.matrix());

  Eigen::ComplexEigenSolver<ComplexMatrix> eig(standard, /*computeEigenvectors=*/false);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::kEigensolverFailure, "complex Schur iteration did not converge");
  }

  SpectralSummary s;
  s.n = n;
  s.cluster_tol = std::max(tol, kClusterTolFloor);
  s.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  std::stable_sort(s.eigenvalues.begin(), s.eigenvalues.end(),
                   [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });
  for (const Complex z : s.eigenvalues) {
    s.max_modulus_deviation = std::max(s.max_modulus_deviation, std::abs(std::abs(z) - 1.0));
  }
  s.clusters = cluster_eigenvalues(s.eigenvalues, s.cluster_tol, &s.cluster_of);

  double best = s.cluster_tol;
  for (const auto& c : s.clusters) {
    const double d = std::abs(c.value - 1.0);
    if (d <= best) {
      best = d;
      s.multiplicity_of_one = c.multiplicity;
    }
  }

  const auto svd = shifted_svd(standard, 1.0, 0);
  s.kernel_method_dim = (svd.singularValues().array() < kernel_rank_tol(n)).count();
  return s;
}

SpectralSummary spectrum(const UnitaryMatrix& u, double tol) {
  return spectrum(berezin_build(u), WeightedSpace(u), tol);
}

std::vector<std::string> SpectralSummary::invariant_violations() const {
  std::vector<std::string> out;
  Eigen::Index total = 0;
  for (const auto& c : clusters) total += c.multiplicity;
  if (total != n * n) out.push_back("cluster multiplicities do not sum to n^2");
  if (max_modulus_deviation > 1e-8) out.push_back("eigenvalue off the unit circle");
  if (multiplicity_of_one != kernel_method_dim) {
    out.push_back("cluster multiplicity of 1 disagrees with SVD kernel dimension");
  }
  if (kernel_method_dim < 2 * n - 1) out.push_back("multiplicity of 1 below 2n-1");
  return out;
}

Eigen::Index kernel_dimension_at(const BerezinOperator& op, const WeightedSpace& space,
                                 Complex value, double rank_tol) {
  const auto svd = shifted_svd(space.conjugate_to_standard(op.matrix()), value, 0);
  return (svd.singularValues().array() < rank_tol).count();
}

EigenspaceOfOne eigenspace_of_one(const BerezinOperator& op, const WeightedSpace& space,
                                  double tol) {
  const Eigen::Index n = op.n();
  const Eigen::Index dim = n * n;
  const auto svd = shifted_svd(space.conjugate_to_standard(op.matrix()), 1.0, Eigen::ComputeFullV);
  const double rank_tol = std::max(tol, kernel_rank_tol(n));
  const Eigen::Index d = (svd.singularValues().array() < rank_tol).count();
  const ComplexMatrix kernel = svd.matrixV().rightCols(d);

  EigenspaceOfOne out;
  for (Eigen::Index j = 0; j < d; ++j) {
    out.basis.push_back(SymbolFunction::from_flat(n, space.from_standard(kernel.col(j))));
  }

  // W is real, so real/imaginary parts commute with the similarity and the
  // reduction can happen in standard coordinates.
  RealMatrix parts(dim, 2 * d);
  parts.leftCols(d) = kernel.real();
  parts.rightCols(d) = kernel.imag();
  if (d > 0) {
    Eigen::JacobiSVD<RealMatrix> real_svd(parts, Eigen::ComputeThinU);
    const double top = real_svd.singularValues()(0);
    const Eigen::Index r = (real_svd.singularValues().array() > 1e-6 * top).count();
    for (Eigen::Index j = 0; j < r; ++j) {
      const ComplexVector v = real_svd.matrixU().col(j).cast<Complex>();
      SymbolFunction f = SymbolFunction::from_flat(n, space.from_standard(v));
      out.imaginary_basis.push_back(Complex(0.0, 1.0) * f);
      out.real_basis.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<TableRow> example2_predicted_table(Eigen::Index n, Complex theta) {
  const double nd = static_cast<double>(n);
  const Complex tb = std::conj(theta);
  const Complex ratio = (tb + nd - 1.0) / (theta + nd - 1.0);
  return {
      {"E", 1.0, 2 * n - 1},
      {"V1", -theta * ratio, 1},
      {"V2", -ratio, n - 1},
      {"V3", tb, (n * n - 3 * n + 2) / 2},
      {"V4", -tb, (n * n - 3 * n) / 2},
  };
}

TableReport verify_spectrum_against_table(Eigen::Index n, Complex theta, double tol) {
  if (n < 3) throw Error(ErrorKind::kNotApplicable, "the isotypic table needs n >= 3");
  const Example2Matrix ex = build_example2(n, theta);
  const SpectralSummary s = spectrum(ex.matrix, tol);
  const double match_tol = std::max(tol, kClusterTolFloor);

  TableReport report;
  report.n = n;
  report.theta = ex.theta;
  report.multiplicity_of_one = s.kernel_method_dim;

  // Coincident predictions (non-generic theta) are merged into one row.
  for (TableRow row : example2_predicted_table(n, ex.theta)) {
    if (row.predicted_multiplicity == 0) {
      report.rows.push_back(row);
      continue;
    }
    auto same = std::find_if(report.rows.begin(), report.rows.end(), [&](const TableRow& r) {
      return r.predicted_multiplicity > 0 && std::abs(r.predicted - row.predicted) <= match_tol;
    });
    if (same != report.rows.end()) {
      same->label += "+" + row.label;
      same->predicted_multiplicity += row.predicted_multiplicity;
    } else {
      report.rows.push_back(row);
    }
  }

  std::vector<bool> used(s.eigenvalues.size(), false);
  bool ok = true;
  for (auto& row : report.rows) {
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      const double d = std::abs(s.eigenvalues[i] - row.predicted);
      if (d <= match_tol && !used[i]) {
        used[i] = true;
        ++row.observed_multiplicity;
        row.max_deviation = std::max(row.max_deviation, d);
      }
    }
    row.matched = row.observed_multiplicity == row.predicted_multiplicity;
    ok = ok && row.matched;
  }
  report.unmatched_eigenvalues = std::count(used.begin(), used.end(), false);
  report.all_match = ok && report.unmatched_eigenvalues == 0 &&
                     report.multiplicity_of_one == 2 * n - 1 &&
                     s.multiplicity_of_one == s.kernel_method_dim;
  return report;
}

}  // namespace berezin
