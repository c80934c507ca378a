#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "endo/error.hpp"
#include "endo/rational.hpp"

namespace endo {

// Dense univariate polynomial, coefficients low degree first.
//
// R needs +, -, *, unary -, multiplication by Rational, is_zero(R) and,
// for division, inverse(R). The coefficient vector is never empty so that a
// zero of the right parent can always be recovered from c_[0].
template <class R>
class Poly {
 public:
  explicit Poly(R constant) { c_.push_back(std::move(constant)); }
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) {
    assert(!c_.empty());
    trim();
  }

  // T - root
  static Poly linear(const R& one, const R& root) { return Poly(std::vector<R>{-root, one}); }

  int degree() const {
    if (c_.size() == 1 && is_zero(c_[0])) return -1;
    return static_cast<int>(c_.size()) - 1;
  }
  bool zero() const { return degree() < 0; }
  const std::vector<R>& coeffs() const { return c_; }
  const R& operator[](std::size_t k) const { return c_[k]; }
  R coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : zero_elem(); }
  const R& leading() const { return c_.back(); }
  R zero_elem() const { return c_[0] - c_[0]; }

  Poly operator+(const Poly& o) const {
    std::vector<R> r;
    std::size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k < c_.size() && k < o.c_.size())
        r.push_back(c_[k] + o.c_[k]);
      else if (k < c_.size())
        r.push_back(c_[k]);
      else
        r.push_back(o.c_[k]);
    }
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<R> r;
    for (const auto& a : c_) r.push_back(-a);
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    std::vector<R> r(c_.size() + o.c_.size() - 1, zero_elem());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const R& a) const {
    std::vector<R> r;
    for (const auto& b : c_) r.push_back(b * a);
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const {
    if (degree() != o.degree()) return false;
    for (int k = 0; k <= degree(); ++k)
      if (!is_zero(c_[k] - o.c_[k])) return false;
    return true;
  }

  Poly derivative() const {
    if (c_.size() == 1) return Poly(zero_elem());
    std::vector<R> r;
    for (std::size_t k = 1; k < c_.size(); ++k) r.push_back(c_[k] * Rational(static_cast<long>(k)));
    return Poly(std::move(r));
  }

  // Horner evaluation at x in a ring S receiving coefficients through embed.
  template <class S, class Embed>
  S eval(const S& x, Embed embed) const {
    S acc = embed(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * x + embed(c_[k]);
    return acc;
  }
  R eval(const R& x) const {
    return eval(x, [](const R& a) { return a; });
  }

  Poly monic() const {
    require(!zero(), ErrorKind::DivisionByZero, "monic of zero polynomial");
    return scaled(inverse(leading()));
  }

 private:
  void trim() {
    while (c_.size() > 1 && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  require(!b.zero(), ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<R> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Poly<R>(a.zero_elem()), a};
  std::vector<R> quo(da - db + 1, a.zero_elem());
  R lead_inv = inverse(b.leading());
  for (int k = da; k >= db; --k) {
    if (is_zero(rem[k])) continue;
    R t = rem[k] * lead_inv;
    quo[k - db] = t;
    for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - t * b[j];
  }
  rem.resize(db > 0 ? db : 1, a.zero_elem());
  if (db == 0) rem[0] = a.zero_elem();
  return {Poly<R>(std::move(quo)), Poly<R>(std::move(rem))};
}

// Monic gcd over a field of coefficients.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  while (!b.zero()) {
    Poly<R> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.zero()) return a;
  return a.monic();
}

template <class R>
bool is_squarefree(const Poly<R>& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

using PolyQ = Poly<Rational>;

}  // namespace endo
