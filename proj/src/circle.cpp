#include "endo/circle.hpp"

#include "endo/error.hpp"

namespace endo {

UnitCircleValue::UnitCircleValue(const Rational& angle) : t_(angle) {
  t_.canonicalize();
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t_.get_num_mpz_t(), t_.get_den_mpz_t());
  t_ -= Rational(fl);
}

int UnitCircleValue::as_sign() const {
  require(is_sign(), ErrorKind::InvalidArgument, "value is not a sign: " + render());
  return t_ == 0 ? 1 : -1;
}

std::string UnitCircleValue::render() const {
  if (t_ == 0) return "+1";
  if (t_ == Rational(1, 2)) return "-1";
  return "exp(2*pi*i*" + t_.get_str() + ")";
}

}  // namespace endo
