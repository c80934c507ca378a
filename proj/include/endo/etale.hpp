#pragma once

#include <memory>
#include <string>
#include <utility>

#include "endo/localfield.hpp"

namespace endo {

class QuadraticEtale;
using EtalePtr = std::shared_ptr<const QuadraticEtale>;
class EtaleElement;

// K[s]/(s^2 - delta) over a tower K, with involution s -> -s. The algebra is a
// field exactly when delta is not a square in the completion; otherwise it is
// split, and delta = 1 gives the coordinate-pair model (x + y s <-> (x+y, x-y)).
class QuadraticEtale : public std::enable_shared_from_this<QuadraticEtale> {
 public:
  static EtalePtr make(const FieldElement& delta);
  // Field shape; throws InvalidArgument when delta is a square.
  static EtalePtr field(const FieldElement& delta);
  static EtalePtr split(const TowerPtr& base);

  const TowerPtr& base() const { return base_; }
  const FieldElement& delta() const { return delta_; }
  bool is_field() const { return is_field_; }
  bool pair_model() const { return delta_ == base_->one(); }
  // Dimension over the base Q_p (or R).
  int degree_over_base() const { return 2 * base_->degree(); }
  std::string name() const;

  EtaleElement element(const FieldElement& a, const FieldElement& b) const;
  EtaleElement element(const FieldElement& a) const;
  EtaleElement scalar(const Rational& q) const;
  EtaleElement sqrt_delta() const;
  // Split algebra with delta = 1: the element with coordinates (first, second).
  EtaleElement from_pair(const FieldElement& first, const FieldElement& second) const;

 private:
  QuadraticEtale(FieldElement delta, bool is_field);
  TowerPtr base_;
  FieldElement delta_;
  bool is_field_;
};

class EtaleElement {
 public:
  EtaleElement(EtalePtr alg, FieldElement a, FieldElement b);

  const EtalePtr& algebra() const { return alg_; }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool fixed() const { return b_.is_zero(); }

  EtaleElement operator+(const EtaleElement& o) const;
  EtaleElement operator-(const EtaleElement& o) const;
  EtaleElement operator-() const;
  EtaleElement operator*(const EtaleElement& o) const;
  EtaleElement operator*(const FieldElement& k) const;
  EtaleElement operator*(const Rational& q) const;
  EtaleElement operator/(const EtaleElement& o) const { return *this * o.inverse(); }
  EtaleElement inverse() const;
  EtaleElement pow(long k) const;
  bool operator==(const EtaleElement& o) const;
  bool operator!=(const EtaleElement& o) const { return !(*this == o); }

  EtaleElement tau() const;
  // x tau(x) and x + tau(x) in the fixed field.
  FieldElement norm() const;
  FieldElement trace() const;
  // Coordinates in the pair model (delta = 1 only).
  std::pair<FieldElement, FieldElement> pair() const;

 private:
  void same_algebra(const EtaleElement& o) const;
  EtalePtr alg_;
  FieldElement a_;
  FieldElement b_;
};

inline bool is_zero(const EtaleElement& x) { return x.is_zero(); }
inline EtaleElement inverse(const EtaleElement& x) { return x.inverse(); }
inline EtaleElement tau(const EtaleElement& x) { return x.tau(); }

// The fixed-field element as an element of the algebra, and back.
FieldElement fixed_part(const EtaleElement& x);

Matrix<Rational> mult_matrix(const EtaleElement& x);
// Characteristic polynomial of multiplication by x over the base Q_p.
PolyQ charpoly_over_base(const EtaleElement& x);
Rational norm_to_base(const EtaleElement& x);
Rational trace_to_base(const EtaleElement& x);

// +1 iff c (in the fixed field) is a norm from the algebra.
int sgn_value(const FieldElement& c, const QuadraticEtale& alg);
int norm_test(const FieldElement& c, const QuadraticEtale& alg);

// A quadratic field E = F(sqrt(delta_E)) over the trivial tower, together
// with a tower model of E whose generator is sqrt(delta_E). delta_E must be an
// integer of valuation 0 (non-residue) or 1.
struct UnitaryBaseData {
  EtalePtr E;
  TowerPtr E_tower;
  Rational delta_E;

  static UnitaryBaseData make(const TowerPtr& base, const Rational& delta_E);
  // F_{+-i} tensor E.
  EtalePtr tensor(const TowerPtr& fixed_field) const;
  // E -> F_i sending sqrt(delta_E) to the algebra generator s.
  EtaleElement embed(const EtaleElement& e, const EtalePtr& target) const;
  FieldElement to_tower(const EtaleElement& e) const;
  EtaleElement from_tower(const FieldElement& z) const;
};

// Characteristic polynomial over E of multiplication by y in F_i = K tensor E.
Poly<EtaleElement> charpoly_over_E(const EtaleElement& y, const UnitaryBaseData& ub);

std::string to_string(const EtaleElement& x);

}  // namespace endo
