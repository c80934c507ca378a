#pragma once

#include <vector>

#include "endo/error.hpp"
#include "endo/poly.hpp"

namespace endo {

template <class R>
using Matrix = std::vector<std::vector<R>>;

template <class R>
Matrix<R> mat_mul(const Matrix<R>& a, const Matrix<R>& b, const R& zero) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Matrix<R> r(n, std::vector<R>(m, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][l] * b[l][j];
    }
  return r;
}

template <class R>
Matrix<R> transpose(const Matrix<R>& a) {
  if (a.empty()) return a;
  Matrix<R> r(a[0].size(), std::vector<R>(a.size(), a[0][0]));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

template <class R>
R determinant(Matrix<R> a, const R& one) {
  std::size_t n = a.size();
  R det = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) return one - one;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    R inv = inverse(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a[r][col])) continue;
      R t = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - t * a[col][c];
    }
  }
  return det;
}

// Solves a x = b for square invertible a.
template <class R>
std::vector<R> solve(Matrix<R> a, std::vector<R> b) {
  std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    require(piv < n, ErrorKind::DivisionByZero, "singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    R inv = inverse(a[col][col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a[r][col])) continue;
      R t = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - t * a[col][c];
      b[r] = b[r] - t * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = b[i] * inverse(a[i][i]);
  return b;
}

// Characteristic polynomial det(T - a) by the Faddeev-LeVerrier recursion.
template <class R>
Poly<R> charpoly(const Matrix<R>& a, const R& one) {
  std::size_t n = a.size();
  R zero = one - one;
  std::vector<R> c(n + 1, zero);
  c[n] = one;
  Matrix<R> m(n, std::vector<R>(n, zero));
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<R> am = mat_mul(a, m, zero);
    for (std::size_t i = 0; i < n; ++i) am[i][i] = am[i][i] + c[n - k + 1];
    m = std::move(am);
    Matrix<R> t = mat_mul(a, m, zero);
    R tr = zero;
    for (std::size_t i = 0; i < n; ++i) tr = tr + t[i][i];
    c[n - k] = -(tr * Rational(1, static_cast<long>(k)));
  }
  return Poly<R>(std::move(c));
}

}  // namespace endo
