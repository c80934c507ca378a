#pragma once

#include <gmpxx.h>

#include <string>

namespace endo {

using Integer = mpz_class;
using Rational = mpq_class;

// v_p of a nonzero integer or rational.
int padic_valuation(const Integer& z, long p);
int padic_valuation(const Rational& q, long p);

// Residue in [0, m) of a rational whose denominator is prime to m.
long residue_mod(const Rational& q, long m);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational inverse(const Rational& q) { return 1 / q; }

}  // namespace endo
