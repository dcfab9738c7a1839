#include "berezin/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "berezin/error.hpp"
#include "berezin/spectral.hpp"

namespace berezin {

namespace {

Eigen::Index wrap(long long k, Eigen::Index n) {
  const long long m = k % static_cast<long long>(n);
  return static_cast<Eigen::Index>(m < 0 ? m + n : m);
}

// Orthonormal basis of the null space of a real constraint matrix.
std::vector<ComplexVector> null_space(const RealMatrix& constraints) {
  Eigen::JacobiSVD<RealMatrix> svd(constraints, Eigen::ComputeFullV);
  const Eigen::Index rank = (svd.singularValues().array() > 1e-9).count();
  const Eigen::Index cols = constraints.cols();
  std::vector<ComplexVector> out;
  for (Eigen::Index j = rank; j < cols; ++j) out.push_back(svd.matrixV().col(j).cast<Complex>());
  return out;
}

}  // namespace

Complex root_of_unity(Eigen::Index n, long long k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(wrap(k, n)) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

FourierMatrix build_fourier(Eigen::Index n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "build_fourier needs n >= 1");
  ComplexMatrix m(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) m(k, l) = scale * root_of_unity(n, k * l);
  }
  return {n, UnitaryMatrix::validate(m, 1e-12)};
}

Example2Matrix build_example2(Eigen::Index n, Complex theta) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "build_example2 needs n >= 1");
  if (!(std::abs(std::abs(theta) - 1.0) <= 1e-8)) {
    throw Error(ErrorKind::kInvalidArgument, "theta must lie on the unit circle");
  }
  theta /= std::abs(theta);
  if (std::abs(theta - 1.0) < 1e-8 || std::abs(theta + 1.0) < 1e-8) {
    throw Error(ErrorKind::kThetaDegenerate, "theta must differ from +1 and -1");
  }
  const Complex off = (theta - 1.0) / static_cast<double>(n);
  ComplexMatrix m = ComplexMatrix::Constant(n, n, off);
  m.diagonal().array() += 1.0;
  return {n, theta, UnitaryMatrix::validate(m)};
}

ComplexMatrix PhaseShiftOps::W(long long r) const {
  ComplexMatrix m = ComplexMatrix::Zero(n_, n_);
  for (Eigen::Index k = 0; k < n_; ++k) m(k, k) = root_of_unity(n_, r * k);
  return m;
}

ComplexMatrix PhaseShiftOps::Z(long long r) const {
  ComplexMatrix m = ComplexMatrix::Zero(n_, n_);
  for (Eigen::Index k = 0; k < n_; ++k) m(k, wrap(k + r, n_)) = 1.0;
  return m;
}

WeylCheck check_weyl_relations(Eigen::Index n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "check_weyl_relations needs n >= 1");
  const PhaseShiftOps ops(n);
  const ComplexMatrix f = build_fourier(n).matrix.matrix();
  WeylCheck out;
  for (Eigen::Index r = 0; r < n; ++r) {
    const ComplexMatrix w = ops.W(r);
    const ComplexMatrix z = ops.Z(r);
    out.conjugation = std::max(out.conjugation, max_abs(ComplexMatrix(f.adjoint() * w * f - ops.Z(-r))));
    out.conjugation = std::max(out.conjugation, max_abs(ComplexMatrix(f.adjoint() * z * f - w)));
    for (Eigen::Index s = 0; s < n; ++s) {
      const ComplexMatrix zs = ops.Z(s);
      const ComplexMatrix lhs = zs * w;
      const ComplexMatrix rhs = root_of_unity(n, r * s) * (w * zs);
      out.weyl = std::max(out.weyl, max_abs(ComplexMatrix(lhs - rhs)));
    }
  }
  return out;
}

FourierEigenReport fourier_eigenfunction_check(Eigen::Index n) {
  const FourierMatrix fm = build_fourier(n);
  const BerezinOperator op = berezin_build(fm.matrix);
  const WeightedSpace space(fm.matrix);
  FourierEigenReport report;
  report.n = n;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      ComplexMatrix v(n, n);
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) v(k, l) = root_of_unity(n, r * k + s * l);
      }
      const SymbolFunction f(std::move(v));
      const SymbolFunction residual = op.apply(f) - root_of_unity(n, r * s) * f;
      report.max_residual = std::max(report.max_residual, space.norm(residual));
      if ((r * s) % n == 0) ++report.zero_product_pairs;
    }
  }
  report.multiplicity_of_one = spectrum(op, space).kernel_method_dim;
  return report;
}

Permutation identity_permutation(Eigen::Index n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Eigen::Index{0});
  return p;
}

Permutation inverse(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<Eigen::Index>(i);
  return inv;
}

Permutation random_permutation(Eigen::Index n, std::mt19937_64& rng) {
  Permutation p = identity_permutation(n);
  // Explicit Fisher-Yates: std::shuffle's draw pattern is library-specific.
  for (Eigen::Index i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<Eigen::Index> pick(0, i);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(pick(rng))]);
  }
  return p;
}

ComplexMatrix permutation_operator(const Permutation& sigma) {
  const auto n = static_cast<Eigen::Index>(sigma.size());
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) s(sigma[static_cast<std::size_t>(j)], j) = 1.0;
  return s;
}

SymbolFunction permute_symbol(const Permutation& sigma, const SymbolFunction& f) {
  const Permutation inv = inverse(sigma);
  const Eigen::Index n = f.n();
  SymbolFunction out = SymbolFunction::zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      out(k, l) = f(inv[static_cast<std::size_t>(k)], inv[static_cast<std::size_t>(l)]);
    }
  }
  return out;
}

SymbolFunction shift_symbol(long long s, long long t, const SymbolFunction& f) {
  const Eigen::Index n = f.n();
  SymbolFunction out = SymbolFunction::zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) out(k, l) = f(wrap(k + t, n), wrap(l - s, n));
  }
  return out;
}

double intertwining_deviation(const UnitaryMatrix& u, const Permutation& inv_k,
                              const Permutation& inv_l, const ComplexVector& a,
                              const ComplexVector& b) {
  const Eigen::Index n = u.n();
  if (static_cast<Eigen::Index>(inv_k.size()) != n || static_cast<Eigen::Index>(inv_l.size()) != n ||
      a.size() != n || b.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "intertwining data must have length n");
  }
  double dev = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const Complex lhs = a(k) * u(inv_k[static_cast<std::size_t>(k)], inv_l[static_cast<std::size_t>(l)]) *
                          std::conj(b(l));
      dev = std::max(dev, std::abs(lhs - u(k, l)));
    }
  }
  return dev;
}

double EquivarianceReport::max() const {
  return std::max({c_map, d_map, commutation, unitarity, intertwining});
}

namespace {

// Shared by both example families: checks one group element given its
// actions on F(K) (s_op) and on F(M) (act).
template <class Act>
void accumulate_equivariance(EquivarianceReport& rep, const UnitaryMatrix& u,
                             const BerezinOperator& op, const WeightedSpace& space,
                             const ComplexMatrix& s_op, Act act, const SymbolFunction& f,
                             const SymbolFunction& g) {
  const SymbolFunction rf = act(f);
  const ComplexMatrix c_lhs = c_symbol_to_operator(u, rf);
  const ComplexMatrix c_rhs = s_op * c_symbol_to_operator(u, f) * s_op.adjoint();
  rep.c_map = std::max(rep.c_map, max_abs(ComplexMatrix(c_lhs - c_rhs)));
  const ComplexMatrix d_lhs = d_symbol_to_operator(u, rf);
  const ComplexMatrix d_rhs = s_op * d_symbol_to_operator(u, f) * s_op.adjoint();
  rep.d_map = std::max(rep.d_map, max_abs(ComplexMatrix(d_lhs - d_rhs)));
  rep.commutation = std::max(rep.commutation, space.norm(op.apply(rf) - act(op.apply(f))));
  rep.unitarity = std::max(rep.unitarity, std::abs(space.inner(rf, act(g)) - space.inner(f, g)));
}

}  // namespace

EquivarianceReport check_equivariance_example2(Eigen::Index n, Complex theta, Eigen::Index trials,
                                               RngSeed seed) {
  const Example2Matrix ex = build_example2(n, theta);
  const BerezinOperator op = berezin_build(ex.matrix);
  const WeightedSpace space(ex.matrix);
  const ComplexVector ones = ComplexVector::Ones(n);
  std::mt19937_64 rng(seed.value);
  EquivarianceReport rep;
  for (Eigen::Index t = 0; t < trials; ++t) {
    const Permutation sigma = random_permutation(n, rng);
    const SymbolFunction f = random_symbol(n, rng);
    const SymbolFunction g = random_symbol(n, rng);
    const Permutation inv = inverse(sigma);
    rep.intertwining = std::max(rep.intertwining, intertwining_deviation(ex.matrix, inv, inv, ones, ones));
    accumulate_equivariance(rep, ex.matrix, op, space, permutation_operator(sigma),
                            [&](const SymbolFunction& h) { return permute_symbol(sigma, h); }, f, g);
  }
  return rep;
}

EquivarianceReport check_equivariance_fourier(Eigen::Index n, Eigen::Index trials, RngSeed seed) {
  const FourierMatrix fm = build_fourier(n);
  const BerezinOperator op = berezin_build(fm.matrix);
  const WeightedSpace space(fm.matrix);
  const PhaseShiftOps ops(n);
  std::mt19937_64 rng(seed.value);
  EquivarianceReport rep;
  for (Eigen::Index trial = 0; trial < trials; ++trial) {
    const SymbolFunction f = random_symbol(n, rng);
    const SymbolFunction g = random_symbol(n, rng);
    for (Eigen::Index s = 0; s < n; ++s) {
      for (Eigen::Index t = 0; t < n; ++t) {
        Permutation inv_k(static_cast<std::size_t>(n));
        Permutation inv_l(static_cast<std::size_t>(n));
        ComplexVector a(n);
        ComplexVector b(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          inv_k[static_cast<std::size_t>(i)] = wrap(i + t, n);
          inv_l[static_cast<std::size_t>(i)] = wrap(i - s, n);
          a(i) = root_of_unity(n, s * i);
          b(i) = root_of_unity(n, (i - s) * t);
        }
        rep.intertwining = std::max(rep.intertwining, intertwining_deviation(fm.matrix, inv_k, inv_l, a, b));
        accumulate_equivariance(rep, fm.matrix, op, space, ops.W(s) * ops.Z(t),
                                [&](const SymbolFunction& h) { return shift_symbol(s, t, h); }, f, g);
      }
    }
  }
  return rep;
}

std::array<std::vector<ComplexVector>, 4> isotypic_spanning_sets(Eigen::Index n) {
  if (n < 3) throw Error(ErrorKind::kNotApplicable, "isotypic decomposition needs n >= 3");
  const Eigen::Index dim = n * n;
  const auto idx = [n](Eigen::Index k, Eigen::Index l) { return k * n + l; };
  std::array<std::vector<ComplexVector>, 4> sets;

  // V1: a + b delta_kl.
  sets[0].push_back(ComplexVector::Ones(dim));
  {
    ComplexVector d = ComplexVector::Zero(dim);
    for (Eigen::Index k = 0; k < n; ++k) d(idx(k, k)) = 1.0;
    sets[0].push_back(d);
  }

  // V2: a_k + b_l + c_k delta_kl with zero-sum a, b, c; e_i - e_{i+1} spans
  // the zero-sum vectors.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    ComplexVector a = ComplexVector::Zero(dim);
    ComplexVector b = ComplexVector::Zero(dim);
    ComplexVector c = ComplexVector::Zero(dim);
    for (Eigen::Index j = 0; j < n; ++j) {
      a(idx(i, j)) += 1.0;
      a(idx(i + 1, j)) -= 1.0;
      b(idx(j, i)) += 1.0;
      b(idx(j, i + 1)) -= 1.0;
    }
    c(idx(i, i)) = 1.0;
    c(idx(i + 1, i + 1)) = -1.0;
    sets[1].push_back(a);
    sets[1].push_back(b);
    sets[1].push_back(c);
  }

  // V3: antisymmetric with zero row sums.
  {
    std::vector<RealVector> rows;
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = k; l < n; ++l) {
        RealVector r = RealVector::Zero(dim);
        r(idx(k, l)) += 1.0;
        r(idx(l, k)) += 1.0;
        rows.push_back(r);
      }
      RealVector sum = RealVector::Zero(dim);
      for (Eigen::Index l = 0; l < n; ++l) sum(idx(k, l)) = 1.0;
      rows.push_back(sum);
    }
    RealMatrix a(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i];
    sets[2] = null_space(a);
  }

  // V4: symmetric, zero diagonal, zero row sums.
  {
    std::vector<RealVector> rows;
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = k + 1; l < n; ++l) {
        RealVector r = RealVector::Zero(dim);
        r(idx(k, l)) = 1.0;
        r(idx(l, k)) = -1.0;
        rows.push_back(r);
      }
      RealVector diag = RealVector::Zero(dim);
      diag(idx(k, k)) = 1.0;
      rows.push_back(diag);
      RealVector sum = RealVector::Zero(dim);
      for (Eigen::Index l = 0; l < n; ++l) sum(idx(k, l)) = 1.0;
      rows.push_back(sum);
    }
    RealMatrix a(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i];
    sets[3] = null_space(a);
  }
  return sets;
}

IsotypicDecomposition isotypic_projectors(const Example2Matrix& ex) {
  const Eigen::Index n = ex.n;
  const auto sets = isotypic_spanning_sets(n);
  const WeightedSpace space(ex.matrix);
  IsotypicDecomposition out;
  out.n = n;
  for (std::size_t i = 0; i < 4; ++i) {
    out.projectors[i] = weighted_projector(space, sets[i]);
    out.ranks[i] = numerical_rank(out.projectors[i], 1e-9);
  }
  std::vector<ComplexVector> e_span;
  for (const auto& f : e_subspace_basis(n)) e_span.push_back(f.flat());
  out.e_projector = weighted_projector(space, e_span);
  const ComplexMatrix e_perp = ComplexMatrix::Identity(n * n, n * n) - out.e_projector;
  out.v1_perp_rank = numerical_rank(ComplexMatrix(e_perp * out.projectors[0]), 1e-9);
  out.v2_perp_rank = numerical_rank(ComplexMatrix(e_perp * out.projectors[1]), 1e-9);
  return out;
}

}  // namespace berezin
