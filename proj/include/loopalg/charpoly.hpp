#pragma once

#include <vector>

#include "loopalg/linalg.hpp"
#include "loopalg/rational.hpp"

namespace loopalg {

template <class R>
R trace(const Matrix<R>& m) {
  R out(0);
  for (int i = 0; i < m.rows(); ++i) out = out + m(i, i);
  return out;
}

/// Coefficients c_0 = 1, c_1, ..., c_kmax of det(x - A) = sum_k c_k x^{n-k},
/// by the Faddeev-LeVerrier recursion. R must be a commutative Q-algebra
/// supporting R * Rational.
template <class R>
std::vector<R> charpoly_coeffs(const Matrix<R>& a, int kmax) {
  const int n = a.rows();
  std::vector<R> c{R(1)};
  Matrix<R> m = Matrix<R>::identity(n);
  for (int k = 1; k <= kmax; ++k) {
    Matrix<R> am = a * m;
    R ck = trace(am) * Rational(-1, k);
    c.push_back(ck);
    if (k == kmax) break;
    m = am;
    for (int i = 0; i < n; ++i) m(i, i) = m(i, i) + ck;
  }
  return c;
}

/// tr(A^k).
template <class R>
R trace_power(const Matrix<R>& a, int k) {
  Matrix<R> p = a;
  for (int i = 1; i < k; ++i) p = p * a;
  return trace(p);
}

}  // namespace loopalg
