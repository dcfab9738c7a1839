#include <doctest.h>

#include <cmath>

#include "berezin/symbol_calculus.hpp"
#include "berezin/symmetry.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace berezin;
using test_support::kind_of;

namespace {

const Complex I(0.0, 1.0);

UnitaryMatrix fourier2() { return build_fourier(2).matrix; }

SymbolFunction indicator(Eigen::Index n, Eigen::Index k, Eigen::Index l) {
  SymbolFunction f = SymbolFunction::zero(n);
  f(k, l) = 1.0;
  return f;
}

}  // namespace

TEST_CASE("weighted inner product basics") {
  const UnitaryMatrix u = haar_random_unitary(4, RngSeed{17});
  const WeightedSpace space(u);
  const SymbolFunction one = SymbolFunction::constant(4, 1.0);
  CHECK(std::abs(space.inner(one, one) - Complex(4.0)) < 1e-12);

  // Distinct indicators are orthogonal; an indicator has norm |u_kl|.
  CHECK(std::abs(space.inner(indicator(4, 0, 1), indicator(4, 2, 1))) == 0.0);
  CHECK(space.norm(indicator(4, 2, 3)) == doctest::Approx(std::abs(u(2, 3))).epsilon(1e-14));

  std::mt19937_64 rng(5);
  const SymbolFunction f = random_symbol(4, rng);
  const SymbolFunction g = random_symbol(4, rng);
  CHECK(std::abs(weighted_inner(space, f, g) - oracle::weighted_inner(u.matrix(), f.values(), g.values())) <
        1e-12);
  CHECK(std::abs(space.inner(f, g) - std::conj(space.inner(g, f))) < 1e-14);

  CHECK(kind_of([&] { weighted_inner(space, f, SymbolFunction::zero(3)); }) == ErrorKind::kDimensionMismatch);
}

TEST_CASE("weighted inner product of Fourier characters at n = 2") {
  const UnitaryMatrix u = fourier2();
  const WeightedSpace space(u);
  ComplexVector eps(2);
  eps << root_of_unity(2, 0), root_of_unity(2, 1);
  const SymbolFunction rows = SymbolFunction::from_row_column(eps, ComplexVector());
  const SymbolFunction cols = SymbolFunction::from_row_column(ComplexVector(), eps);
  const Complex expected = oracle::weighted_inner(u.matrix(), rows.values(), cols.values());
  CHECK(std::abs(space.inner(rows, cols) - expected) < 1e-15);
  CHECK(std::abs(expected) < 1e-15);
}

TEST_CASE("WeightedSpace requires nonzero entries") {
  CHECK(kind_of([] { WeightedSpace space(validate_unitary(ComplexMatrix::Identity(3, 3))); }) ==
        ErrorKind::kZeroEntry);
}

TEST_CASE("C and D maps on simple symbols") {
  const UnitaryMatrix u = haar_random_unitary(3, RngSeed{21});

  SUBCASE("constant one maps to the identity") {
    const SymbolFunction one = SymbolFunction::constant(3, 1.0);
    CHECK(max_abs(ComplexMatrix(c_symbol_to_operator(u, one) - ComplexMatrix::Identity(3, 3))) < 1e-14);
    CHECK(max_abs(ComplexMatrix(d_symbol_to_operator(u, one) - ComplexMatrix::Identity(3, 3))) < 1e-14);
  }

  SUBCASE("row symbols map to diagonal operators") {
    ComplexVector a(3);
    a << 1.0, Complex(0.5, -2.0), -3.0;
    const SymbolFunction f = SymbolFunction::from_row_column(a, ComplexVector());
    const ComplexMatrix diag = a.asDiagonal();
    CHECK(max_abs(ComplexMatrix(c_symbol_to_operator(u, f) - diag)) < 1e-14);
    CHECK(max_abs(ComplexMatrix(d_symbol_to_operator(u, f) - diag)) < 1e-14);
  }

  SUBCASE("column symbols map to U diag(b) U*") {
    ComplexVector b(3);
    b << Complex(0.0, 1.0), 2.0, Complex(-1.0, 1.0);
    const SymbolFunction f = SymbolFunction::from_row_column(ComplexVector(), b);
    const ComplexMatrix expected = oracle::conjugated_diagonal(u.matrix(), b);
    CHECK(max_abs(ComplexMatrix(c_symbol_to_operator(u, f) - expected)) < 1e-14);
    CHECK(max_abs(ComplexMatrix(d_symbol_to_operator(u, f) - expected)) < 1e-14);
  }

  SUBCASE("random symbols against the explicit sums") {
    std::mt19937_64 rng(8);
    const SymbolFunction f = random_symbol(3, rng);
    CHECK(max_abs(ComplexMatrix(c_symbol_to_operator(u, f) - oracle::c_operator(u.matrix(), f.values()))) <
          1e-13);
    CHECK(max_abs(ComplexMatrix(d_symbol_to_operator(u, f) - oracle::d_operator(u.matrix(), f.values()))) <
          1e-13);
  }
}

TEST_CASE("Fourier n = 2 column symbol (1, -1) gives the swap") {
  ComplexVector b(2);
  b << 1.0, -1.0;
  const SymbolFunction f = SymbolFunction::from_row_column(ComplexVector(), b);
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(max_abs(ComplexMatrix(c_symbol_to_operator(fourier2(), f) - swap)) < 1e-15);
}

TEST_CASE("conjugation exchanges C and D") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const UnitaryMatrix u = haar_random_unitary(2 + trial % 4, rng);
    const SymbolFunction f = random_symbol(u.n(), rng);
    const ComplexMatrix lhs = d_symbol_to_operator(u, f);
    const ComplexMatrix rhs = c_symbol_to_operator(u, f.conj()).adjoint();
    CHECK(max_abs(ComplexMatrix(lhs - rhs)) <= 1e-12);
  }
}

TEST_CASE("C and D are isometries onto the Hilbert-Schmidt space") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const UnitaryMatrix u = haar_random_unitary(1 + trial % 5, rng);
    const WeightedSpace space(u);
    const SymbolFunction f = random_symbol(u.n(), rng);
    const SymbolFunction g = random_symbol(u.n(), rng);
    const Complex w = space.inner(f, g);
    CHECK(std::abs(hs_inner(c_symbol_to_operator(u, f), c_symbol_to_operator(u, g)) - w) <= 1e-10);
    CHECK(std::abs(hs_inner(d_symbol_to_operator(u, f), d_symbol_to_operator(u, g)) - w) <= 1e-10);
    const ComplexMatrix x = c_symbol_to_operator(u, f);
    const ComplexMatrix y = d_symbol_to_operator(u, g);
    CHECK(std::abs(hs_inner(x, y) - oracle::hs_inner(x, y)) < 1e-12);
  }
}

TEST_CASE("inverse maps round trip") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const UnitaryMatrix u = haar_random_unitary(2 + trial % 4, rng);
    const SymbolFunction f = random_symbol(u.n(), rng);
    const SymbolFunction back_c = operator_to_c_symbol(u, c_symbol_to_operator(u, f));
    const SymbolFunction back_d = operator_to_d_symbol(u, d_symbol_to_operator(u, f));
    CHECK(max_abs(ComplexMatrix(back_c.values() - f.values())) <= 1e-10);
    CHECK(max_abs(ComplexMatrix(back_d.values() - f.values())) <= 1e-10);
  }
  CHECK(kind_of([] {
          operator_to_c_symbol(validate_unitary(ComplexMatrix::Identity(2, 2)), ComplexMatrix::Zero(2, 2));
        }) == ErrorKind::kZeroEntry);
}

TEST_CASE("kernel and composed Berezin transforms agree with the explicit sum") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 12; ++trial) {
    const UnitaryMatrix u = haar_random_unitary(2 + trial % 4, rng);
    const BerezinOperator kernel = berezin_build(u);
    const BerezinOperator composed = berezin_compose(u);
    CHECK(max_abs(ComplexMatrix(kernel.matrix() - composed.matrix())) <= 1e-9);
    const SymbolFunction f = random_symbol(u.n(), rng);
    const ComplexMatrix expected = oracle::berezin_apply(u.matrix(), f.values());
    CHECK(max_abs(ComplexMatrix(kernel.apply(f).values() - expected)) <= 1e-10);
  }
}

TEST_CASE("Berezin transform at n = 1 is the identity") {
  const UnitaryMatrix u = validate_unitary(ComplexMatrix::Constant(1, 1, std::polar(1.0, 0.4)));
  const BerezinOperator op = berezin_build(u);
  CHECK(op.matrix().rows() == 1);
  CHECK(std::abs(op.matrix()(0, 0) - Complex(1.0)) < 1e-15);
}

TEST_CASE("Berezin transform exchanges C and D symbols") {
  // C(I f) = D(f) is the defining identity of I = C^{-1} D.
  std::mt19937_64 rng(7);
  const UnitaryMatrix u = haar_random_unitary(4, rng);
  const BerezinOperator op = berezin_build(u);
  const SymbolFunction f = random_symbol(4, rng);
  CHECK(max_abs(ComplexMatrix(c_symbol_to_operator(u, op.apply(f)) - d_symbol_to_operator(u, f))) <= 1e-10);
}

TEST_CASE("Berezin transform is unitary in the weighted product") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const UnitaryMatrix u = haar_random_unitary(2 + trial % 4, rng);
    const WeightedSpace space(u);
    const BerezinOperator op = berezin_build(u);
    const ComplexMatrix std_op = space.conjugate_to_standard(op.matrix());
    const auto m = std_op.rows();
    CHECK(max_abs(ComplexMatrix(std_op.adjoint() * std_op - ComplexMatrix::Identity(m, m))) <= 1e-9);
    const SymbolFunction f = random_symbol(u.n(), rng);
    const SymbolFunction g = random_symbol(u.n(), rng);
    CHECK(std::abs(space.inner(op.apply(f), op.apply(g)) - space.inner(f, g)) <= 1e-9);
  }
}

TEST_CASE("the row-plus-column subspace is fixed") {
  const Eigen::Index n = 3;
  const UnitaryMatrix u = haar_random_unitary(n, RngSeed{2});
  const WeightedSpace space(u);
  const BerezinOperator op = berezin_build(u);
  const auto basis = e_subspace_basis(n);
  REQUIRE(basis.size() == static_cast<std::size_t>(2 * n - 1));

  ComplexMatrix stacked(n * n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(space.norm(op.apply(basis[i]) - basis[i]) <= 1e-10);
    stacked.col(static_cast<Eigen::Index>(i)) = basis[i].flat();
  }
  CHECK(numerical_rank(stacked, 1e-10) == 2 * n - 1);
}

TEST_CASE("skew symbol criterion") {
  const UnitaryMatrix u = haar_random_unitary(3, RngSeed{12});
  CHECK(is_skew_symbol_c(u, SymbolFunction::constant(3, I), 1e-10));
  CHECK_FALSE(is_skew_symbol_c(u, SymbolFunction::constant(3, 1.0), 1e-10));

  std::mt19937_64 rng(4);
  ComplexMatrix a(3, 3);
  for (Eigen::Index k = 0; k < 3; ++k)
    for (Eigen::Index l = 0; l < 3; ++l)
      a(k, l) = Complex(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
  const ComplexMatrix skew = a - a.adjoint();
  const ComplexMatrix herm = a + a.adjoint();
  CHECK(is_skew_symbol_c(u, operator_to_c_symbol(u, skew), 1e-9));
  CHECK_FALSE(is_skew_symbol_c(u, operator_to_c_symbol(u, herm), 1e-9));
}

TEST_CASE("weighted projector onto a known span") {
  const UnitaryMatrix u = haar_random_unitary(3, RngSeed{19});
  const WeightedSpace space(u);
  std::vector<ComplexVector> spanning;
  for (const auto& f : e_subspace_basis(3)) spanning.push_back(f.flat());
  spanning.push_back(spanning[0] + spanning[3]);  // dependent vector is dropped
  const ComplexMatrix p = weighted_projector(space, spanning);
  CHECK(max_abs(ComplexMatrix(p * p - p)) < 1e-12);
  CHECK(numerical_rank(p, 1e-8) == 5);
  const ComplexMatrix std_p = space.conjugate_to_standard(p);
  CHECK(max_abs(ComplexMatrix(std_p - std_p.adjoint())) < 1e-12);
  for (const auto& v : spanning) CHECK((p * v - v).norm() < 1e-12);
}

TEST_CASE("SymbolFunction flattening is row-major") {
  ComplexVector flat(4);
  flat << 1.0, 2.0, 3.0, 4.0;
  const SymbolFunction f = SymbolFunction::from_flat(2, flat);
  CHECK(f(0, 1) == Complex(2.0));
  CHECK(f(1, 0) == Complex(3.0));
  CHECK((f.flat() - flat).norm() == 0.0);
}
