#pragma once

// Brute-force reference computations for the test suites. Everything here is
// written from the defining sums with explicit loops and shares no code path
// with the library beyond the matrix containers.

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

// #{(r, s) : 0 <= r, s < n, r s = 0 mod n}.
inline long zero_product_pairs(long n) {
  long count = 0;
  for (long r = 0; r < n; ++r) {
    for (long s = 0; s < n; ++s) count += (r * s) % n == 0 ? 1 : 0;
  }
  return count;
}

// x_kk' = sum_l u_kl f_kl conj(u_k'l).
inline CMat c_operator(const CMat& u, const CMat& f) {
  const auto n = u.rows();
  CMat x = CMat::Zero(n, n);
  for (long k = 0; k < n; ++k)
    for (long kp = 0; kp < n; ++kp)
      for (long l = 0; l < n; ++l) x(k, kp) += u(k, l) * f(k, l) * std::conj(u(kp, l));
  return x;
}

// y_kk' = sum_l u_kl f_k'l conj(u_k'l).
inline CMat d_operator(const CMat& u, const CMat& f) {
  const auto n = u.rows();
  CMat y = CMat::Zero(n, n);
  for (long k = 0; k < n; ++k)
    for (long kp = 0; kp < n; ++kp)
      for (long l = 0; l < n; ++l) y(k, kp) += u(k, l) * f(kp, l) * std::conj(u(kp, l));
  return y;
}

inline Complex weighted_inner(const CMat& u, const CMat& f, const CMat& g) {
  Complex acc = 0.0;
  for (long k = 0; k < u.rows(); ++k)
    for (long l = 0; l < u.cols(); ++l) acc += f(k, l) * std::conj(g(k, l)) * std::norm(u(k, l));
  return acc;
}

inline Complex hs_inner(const CMat& x, const CMat& y) {
  Complex acc = 0.0;
  for (long k = 0; k < x.rows(); ++k)
    for (long kp = 0; kp < x.cols(); ++kp) acc += x(k, kp) * std::conj(y(k, kp));
  return acc;
}

// (I_u f)_kl = sum u_kl' u_k'l / (u_kl u_k'l') f_k'l' |u_k'l'|^2, exactly as
// the kernel is usually displayed.
inline CMat berezin_apply(const CMat& u, const CMat& f) {
  const auto n = u.rows();
  CMat out = CMat::Zero(n, n);
  for (long k = 0; k < n; ++k)
    for (long l = 0; l < n; ++l)
      for (long kp = 0; kp < n; ++kp)
        for (long lp = 0; lp < n; ++lp)
          out(k, l) += u(k, lp) * u(kp, l) / (u(k, l) * u(kp, lp)) * f(kp, lp) * std::norm(u(kp, lp));
  return out;
}

// U diag(b) U^* by explicit sums.
inline CMat conjugated_diagonal(const CMat& u, const Eigen::VectorXcd& b) {
  const auto n = u.rows();
  CMat out = CMat::Zero(n, n);
  for (long k = 0; k < n; ++k)
    for (long kp = 0; kp < n; ++kp)
      for (long l = 0; l < n; ++l) out(k, kp) += u(k, l) * b(l) * std::conj(u(kp, l));
  return out;
}

// mu along exp(tX) u using Eigen's Pade-based matrix exponential.
inline RMat mu_along(const CMat& u, const CMat& x, double t) {
  const CMat e = (t * x).exp();
  return (e * u).cwiseAbs2();
}

// Forward-difference error against an analytic derivative p_dot.
inline double forward_difference_error(const CMat& u, const CMat& x, double h, const RMat& p_dot) {
  const RMat fd = (mu_along(u, x, h) - u.cwiseAbs2()) / h;
  return (fd - p_dot).cwiseAbs().maxCoeff();
}

}  // namespace oracle
