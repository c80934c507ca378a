#include "endo/rational.hpp"

#include "endo/error.hpp"

namespace endo {

int padic_valuation(const Integer& z, long p) {
  require(z != 0, ErrorKind::ZeroValuation, "valuation of 0");
  Integer t = abs(z);
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int padic_valuation(const Rational& q, long p) {
  require(q != 0, ErrorKind::ZeroValuation, "valuation of 0");
  return padic_valuation(Integer(q.get_num()), p) - padic_valuation(Integer(q.get_den()), p);
}

long residue_mod(const Rational& q, long m) {
  Integer mod(m);
  Integer den = q.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
    fail(ErrorKind::InvalidArgument, "denominator not invertible modulo " + std::to_string(m));
  Integer r = (Integer(q.get_num()) * inv) % mod;
  if (r < 0) r += mod;
  return r.get_si();
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotEisenstein: return "NotEisenstein";
    case ErrorKind::DyadicRamifiedUnsupported: return "DyadicRamifiedUnsupported";
    case ErrorKind::ZeroValuation: return "ZeroValuation";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DepthTooSmall: return "DepthTooSmall";
    case ErrorKind::NotInFixedField: return "NotInFixedField";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::WildInputUnsupported: return "WildInputUnsupported";
    case ErrorKind::PoleAtMinusOne: return "PoleAtMinusOne";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MatchFailure: return "MatchFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace endo
