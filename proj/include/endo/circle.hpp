#pragma once

#include <string>

#include "endo/rational.hpp"

namespace endo {

// exp(2 pi i t) with t an exact rational taken mod 1.
class UnitCircleValue {
 public:
  UnitCircleValue() = default;
  explicit UnitCircleValue(const Rational& angle);
  static UnitCircleValue sign(int s) { return UnitCircleValue(Rational(s < 0 ? 1 : 0, 2)); }

  const Rational& angle() const { return t_; }
  bool is_sign() const { return t_ == 0 || t_ == Rational(1, 2); }
  // +1 or -1; requires is_sign().
  int as_sign() const;
  UnitCircleValue operator*(const UnitCircleValue& o) const { return UnitCircleValue(t_ + o.t_); }
  UnitCircleValue inverse() const { return UnitCircleValue(-t_); }
  bool operator==(const UnitCircleValue& o) const { return t_ == o.t_; }
  bool operator!=(const UnitCircleValue& o) const { return t_ != o.t_; }
  // "+1", "-1" or "exp(2*pi*i*t)".
  std::string render() const;

 private:
  Rational t_ = 0;
};

}  // namespace endo
