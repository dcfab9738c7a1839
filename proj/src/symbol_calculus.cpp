#include "berezin/symbol_calculus.hpp"

#include <cmath>

#include "berezin/error.hpp"

namespace berezin {

namespace {

void require_same_n(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + ": size " + std::to_string(a) +
                                                   " vs " + std::to_string(b));
  }
}

}  // namespace

SymbolFunction::SymbolFunction(ComplexMatrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw Error(ErrorKind::kNotSquare, "symbol grid must be n x n");
  }
}

SymbolFunction SymbolFunction::zero(Eigen::Index n) {
  return SymbolFunction(ComplexMatrix::Zero(n, n));
}

SymbolFunction SymbolFunction::constant(Eigen::Index n, Complex c) {
  return SymbolFunction(ComplexMatrix::Constant(n, n, c));
}

SymbolFunction SymbolFunction::from_flat(Eigen::Index n, const ComplexVector& flat) {
  require_same_n(flat.size(), n * n, "SymbolFunction::from_flat");
  ComplexMatrix v(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) v(k, l) = flat(k * n + l);
  }
  return SymbolFunction(std::move(v));
}

SymbolFunction SymbolFunction::from_row_column(const ComplexVector& a, const ComplexVector& b) {
  const Eigen::Index n = a.size() > 0 ? a.size() : b.size();
  if (a.size() > 0 && b.size() > 0) require_same_n(a.size(), b.size(), "from_row_column");
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  if (a.size() > 0) v.colwise() += a;
  if (b.size() > 0) v.rowwise() += b.transpose();
  return SymbolFunction(std::move(v));
}

ComplexVector SymbolFunction::flat() const {
  const Eigen::Index n = values_.rows();
  ComplexVector out(n * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) out(k * n + l) = values_(k, l);
  }
  return out;
}

SymbolFunction SymbolFunction::conj() const { return SymbolFunction(values_.conjugate()); }

SymbolFunction& SymbolFunction::operator+=(const SymbolFunction& other) {
  require_same_n(n(), other.n(), "SymbolFunction +");
  values_ += other.values_;
  return *this;
}

SymbolFunction& SymbolFunction::operator-=(const SymbolFunction& other) {
  require_same_n(n(), other.n(), "SymbolFunction -");
  values_ -= other.values_;
  return *this;
}

SymbolFunction& SymbolFunction::operator*=(Complex c) {
  values_ *= c;
  return *this;
}

SymbolFunction operator+(SymbolFunction a, const SymbolFunction& b) { return a += b; }
SymbolFunction operator-(SymbolFunction a, const SymbolFunction& b) { return a -= b; }
SymbolFunction operator*(Complex c, SymbolFunction f) { return f *= c; }

SymbolFunction random_symbol(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix v(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v(k, l) = Complex(re, im);
    }
  }
  return SymbolFunction(std::move(v));
}

WeightedSpace::WeightedSpace(const UnitaryMatrix& u) {
  u.require_nonzero_entries("WeightedSpace");
  weights_ = u.matrix().cwiseAbs2();
  sqrt_weights_ = u.matrix().cwiseAbs();
  const Eigen::Index n = u.n();
  sqrt_flat_.resize(n * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) sqrt_flat_(k * n + l) = sqrt_weights_(k, l);
  }
}

Complex WeightedSpace::inner(const SymbolFunction& f, const SymbolFunction& g) const {
  require_same_n(f.n(), n(), "weighted_inner");
  require_same_n(g.n(), n(), "weighted_inner");
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < n(); ++k) {
    for (Eigen::Index l = 0; l < n(); ++l) acc += f(k, l) * std::conj(g(k, l)) * weights_(k, l);
  }
  return acc;
}

double WeightedSpace::norm(const SymbolFunction& f) const {
  return std::sqrt(std::max(0.0, inner(f, f).real()));
}

ComplexVector WeightedSpace::to_standard(const ComplexVector& flat) const {
  return sqrt_flat_.cast<Complex>().cwiseProduct(flat);
}

ComplexVector WeightedSpace::from_standard(const ComplexVector& flat) const {
  return flat.cwiseQuotient(sqrt_flat_.cast<Complex>());
}

ComplexMatrix WeightedSpace::conjugate_to_standard(const ComplexMatrix& op) const {
  const RealVector inv = sqrt_flat_.cwiseInverse();
  return sqrt_flat_.asDiagonal() * op * inv.asDiagonal();
}

Complex weighted_inner(const WeightedSpace& space, const SymbolFunction& f,
                       const SymbolFunction& g) {
  return space.inner(f, g);
}

Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "hs_inner operand shapes differ");
  }
  return (x * y.adjoint()).trace();
}

ComplexMatrix c_symbol_to_operator(const UnitaryMatrix& u, const SymbolFunction& f) {
  require_same_n(f.n(), u.n(), "c_symbol_to_operator");
  // x = (u .* f) u^*
  return u.matrix().cwiseProduct(f.values()) * u.matrix().adjoint();
}

ComplexMatrix d_symbol_to_operator(const UnitaryMatrix& u, const SymbolFunction& f) {
  require_same_n(f.n(), u.n(), "d_symbol_to_operator");
  // y = u (conj(u) .* f)^T
  return u.matrix() * u.matrix().conjugate().cwiseProduct(f.values()).transpose();
}

SymbolFunction operator_to_c_symbol(const UnitaryMatrix& u, const ComplexMatrix& x) {
  u.require_nonzero_entries("operator_to_c_symbol");
  if (x.rows() != u.n() || x.cols() != u.n()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator_to_c_symbol: operator shape");
  }
  return SymbolFunction(ComplexMatrix((x * u.matrix()).cwiseQuotient(u.matrix())));
}

SymbolFunction operator_to_d_symbol(const UnitaryMatrix& u, const ComplexMatrix& x) {
  u.require_nonzero_entries("operator_to_d_symbol");
  if (x.rows() != u.n() || x.cols() != u.n()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator_to_d_symbol: operator shape");
  }
  return SymbolFunction(ComplexMatrix((x.adjoint() * u.matrix()).cwiseQuotient(u.matrix()).conjugate()));
}

BerezinOperator::BerezinOperator(Eigen::Index n, ComplexMatrix matrix)
    : n_(n), matrix_(std::move(matrix)) {
  if (matrix_.rows() != n * n || matrix_.cols() != n * n) {
    throw Error(ErrorKind::kDimensionMismatch, "Berezin matrix must be n^2 x n^2");
  }
}

SymbolFunction BerezinOperator::apply(const SymbolFunction& f) const {
  require_same_n(f.n(), n_, "BerezinOperator::apply");
  return SymbolFunction::from_flat(n_, matrix_ * f.flat());
}

BerezinOperator berezin_build(const UnitaryMatrix& u) {
  u.require_nonzero_entries("berezin_build");
  const Eigen::Index n = u.n();
  const ComplexMatrix& m = u.matrix();
  ComplexMatrix op(n * n, n * n);
  // |u_k'l'|^2 / u_k'l' = conj(u_k'l').
  for (Eigen::Index kp = 0; kp < n; ++kp) {
    for (Eigen::Index lp = 0; lp < n; ++lp) {
      const Complex cbar = std::conj(m(kp, lp));
      for (Eigen::Index k = 0; k < n; ++k) {
        const Complex row_factor = m(k, lp) * cbar;
        for (Eigen::Index l = 0; l < n; ++l) {
          op(k * n + l, kp * n + lp) = row_factor * m(kp, l) / m(k, l);
        }
      }
    }
  }
  return BerezinOperator(n, std::move(op));
}

BerezinOperator berezin_compose(const UnitaryMatrix& u) {
  u.require_nonzero_entries("berezin_compose");
  const Eigen::Index n = u.n();
  ComplexMatrix op(n * n, n * n);
  for (Eigen::Index j = 0; j < n * n; ++j) {
    SymbolFunction indicator = SymbolFunction::zero(n);
    indicator(j / n, j % n) = 1.0;
    op.col(j) = operator_to_c_symbol(u, d_symbol_to_operator(u, indicator)).flat();
  }
  return BerezinOperator(n, std::move(op));
}

std::vector<SymbolFunction> e_subspace_basis(Eigen::Index n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "e_subspace_basis needs n >= 1");
  std::vector<SymbolFunction> basis;
  basis.reserve(static_cast<std::size_t>(2 * n - 1));
  for (Eigen::Index k = 0; k < n; ++k) {
    basis.push_back(SymbolFunction::from_row_column(ComplexVector::Unit(n, k), ComplexVector()));
  }
  // Column indicator l = 0 equals (sum of row indicators) - (other columns).
  for (Eigen::Index l = 1; l < n; ++l) {
    basis.push_back(SymbolFunction::from_row_column(ComplexVector(), ComplexVector::Unit(n, l)));
  }
  return basis;
}

bool is_skew_symbol_c(const BerezinOperator& op, const WeightedSpace& space,
                      const SymbolFunction& f, double tol) {
  return space.norm(f + op.apply(f.conj())) <= tol;
}

bool is_skew_symbol_c(const UnitaryMatrix& u, const SymbolFunction& f, double tol) {
  return is_skew_symbol_c(berezin_build(u), WeightedSpace(u), f, tol);
}

ComplexMatrix weighted_projector(const WeightedSpace& space,
                                 const std::vector<ComplexVector>& spanning, double rank_tol) {
  const Eigen::Index dim = space.n() * space.n();
  if (spanning.empty()) return ComplexMatrix::Zero(dim, dim);
  ComplexMatrix a(dim, static_cast<Eigen::Index>(spanning.size()));
  for (std::size_t j = 0; j < spanning.size(); ++j) {
    require_same_n(spanning[j].size(), dim, "weighted_projector");
    a.col(static_cast<Eigen::Index>(j)) = space.to_standard(spanning[j]);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > rank_tol) ++r;
  const ComplexMatrix q = svd.matrixU().leftCols(r);
  // P = W^{-1} Q Q^* W, the weighted-orthogonal projector.
  const RealVector inv = space.sqrt_weights_flat().cwiseInverse();
  return inv.asDiagonal() * (q * q.adjoint()) * space.sqrt_weights_flat().asDiagonal();
}

Eigen::Index numerical_rank(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return (svd.singularValues().array() > tol).count();
}

}  // namespace berezin
