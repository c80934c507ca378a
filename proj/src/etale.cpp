#include "endo/etale.hpp"

#include <sstream>

namespace endo {

QuadraticEtale::QuadraticEtale(FieldElement delta, bool is_field)
    : base_(delta.tower()), delta_(std::move(delta)), is_field_(is_field) {}

EtalePtr QuadraticEtale::make(const FieldElement& delta) {
  require(!delta.is_zero(), ErrorKind::InvalidArgument, "radicand must be nonzero");
  bool field = !is_square(delta);
  return EtalePtr(new QuadraticEtale(delta, field));
}

EtalePtr QuadraticEtale::field(const FieldElement& delta) {
  auto alg = make(delta);
  require(alg->is_field(), ErrorKind::InvalidArgument, "radicand is a square: " + to_string(delta));
  return alg;
}

EtalePtr QuadraticEtale::split(const TowerPtr& base) { return EtalePtr(new QuadraticEtale(base->one(), false)); }

std::string QuadraticEtale::name() const {
  if (pair_model()) return base_->name() + " x " + base_->name();
  return base_->name() + "[s]/(s^2 - (" + to_string(delta_) + "))";
}

EtaleElement QuadraticEtale::element(const FieldElement& a, const FieldElement& b) const {
  return EtaleElement(shared_from_this(), a, b);
}
EtaleElement QuadraticEtale::element(const FieldElement& a) const {
  return EtaleElement(shared_from_this(), a, base_->zero());
}
EtaleElement QuadraticEtale::scalar(const Rational& q) const { return element(base_->scalar(q)); }
EtaleElement QuadraticEtale::sqrt_delta() const { return element(base_->zero(), base_->one()); }

EtaleElement QuadraticEtale::from_pair(const FieldElement& first, const FieldElement& second) const {
  require(pair_model(), ErrorKind::InvalidArgument, "coordinate pairs need the split model with delta = 1");
  Rational half(1, 2);
  return element((first + second) * half, (first - second) * half);
}

EtaleElement::EtaleElement(EtalePtr alg, FieldElement a, FieldElement b)
    : alg_(std::move(alg)), a_(std::move(a)), b_(std::move(b)) {
  require(a_.tower() == alg_->base() && b_.tower() == alg_->base(), ErrorKind::InvalidArgument,
          "coordinates must lie in the fixed field of the algebra");
}

void EtaleElement::same_algebra(const EtaleElement& o) const {
  require(alg_ == o.alg_, ErrorKind::InvalidArgument, "elements live in different algebras");
}

EtaleElement EtaleElement::operator+(const EtaleElement& o) const {
  same_algebra(o);
  return EtaleElement(alg_, a_ + o.a_, b_ + o.b_);
}
EtaleElement EtaleElement::operator-(const EtaleElement& o) const {
  same_algebra(o);
  return EtaleElement(alg_, a_ - o.a_, b_ - o.b_);
}
EtaleElement EtaleElement::operator-() const { return EtaleElement(alg_, -a_, -b_); }

EtaleElement EtaleElement::operator*(const EtaleElement& o) const {
  same_algebra(o);
  if (b_.is_zero() && o.b_.is_zero()) return EtaleElement(alg_, a_ * o.a_, b_);
  return EtaleElement(alg_, a_ * o.a_ + alg_->delta() * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
}
EtaleElement EtaleElement::operator*(const FieldElement& k) const { return EtaleElement(alg_, a_ * k, b_ * k); }
EtaleElement EtaleElement::operator*(const Rational& q) const { return EtaleElement(alg_, a_ * q, b_ * q); }

EtaleElement EtaleElement::inverse() const {
  FieldElement n = norm();
  require(!n.is_zero(), ErrorKind::DivisionByZero, "element is a zero divisor: " + to_string(*this));
  FieldElement ninv = n.inverse();
  return EtaleElement(alg_, a_ * ninv, -(b_ * ninv));
}

EtaleElement EtaleElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  EtaleElement result = alg_->scalar(Rational(1));
  EtaleElement base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool EtaleElement::operator==(const EtaleElement& o) const {
  same_algebra(o);
  return a_ == o.a_ && b_ == o.b_;
}

EtaleElement EtaleElement::tau() const { return EtaleElement(alg_, a_, -b_); }
FieldElement EtaleElement::norm() const { return a_ * a_ - alg_->delta() * b_ * b_; }
FieldElement EtaleElement::trace() const { return a_ * Rational(2); }

std::pair<FieldElement, FieldElement> EtaleElement::pair() const {
  require(alg_->pair_model(), ErrorKind::InvalidArgument, "coordinate pairs need the split model");
  return {a_ + b_, a_ - b_};
}

FieldElement fixed_part(const EtaleElement& x) {
  require(x.fixed(), ErrorKind::NotInFixedField, "element not fixed by the involution: " + to_string(x));
  return x.a();
}

Matrix<Rational> mult_matrix(const EtaleElement& x) {
  const auto& alg = *x.algebra();
  Matrix<Rational> ma = mult_matrix(x.a());
  Matrix<Rational> mb = mult_matrix(x.b());
  Matrix<Rational> mbd = mult_matrix(x.b() * alg.delta());
  std::size_t n = ma.size();
  Matrix<Rational> m(2 * n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = ma[i][j];
      m[i][n + j] = mbd[i][j];
      m[n + i][j] = mb[i][j];
      m[n + i][n + j] = ma[i][j];
    }
  return m;
}

PolyQ charpoly_over_base(const EtaleElement& x) { return charpoly(mult_matrix(x), Rational(1)); }
Rational norm_to_base(const EtaleElement& x) { return norm_to_base(x.norm()); }
Rational trace_to_base(const EtaleElement& x) { return trace_to_base(x.trace()); }

int sgn_value(const FieldElement& c, const QuadraticEtale& alg) {
  require(c.tower() == alg.base(), ErrorKind::InvalidArgument, "norm test across towers");
  require(!c.is_zero(), ErrorKind::ZeroValuation, "norm test of 0");
  if (!alg.is_field()) return 1;
  return hilbert_symbol(c, alg.delta());
}

int norm_test(const FieldElement& c, const QuadraticEtale& alg) { return sgn_value(c, alg); }

UnitaryBaseData UnitaryBaseData::make(const TowerPtr& base, const Rational& delta_E) {
  require(base->is_trivial(), ErrorKind::InvalidArgument, "E must be built over the base field");
  const auto& bf = base->base();
  if (bf.is_real()) fail(ErrorKind::UnsupportedCase, "unitary cases over R are not supported");
  if (bf.dyadic()) fail(ErrorKind::UnsupportedCase, "unitary cases over a dyadic base are not supported");
  require(delta_E.get_den() == 1 && delta_E != 0, ErrorKind::InvalidArgument, "delta_E must be a nonzero integer");
  int v = padic_valuation(delta_E, bf.p);
  require(v == 0 || v == 1, ErrorKind::InvalidArgument, "delta_E must have valuation 0 or 1");
  UnitaryBaseData ub;
  ub.delta_E = delta_E;
  ub.E = QuadraticEtale::field(base->scalar(delta_E));
  if (v == 0)
    ub.E_tower = Tower::make_rational(bf, 2, {Rational(-bf.p), Rational(1)},
                                      std::vector<Rational>{-delta_E, Rational(0), Rational(1)});
  else
    ub.E_tower = Tower::make_rational(bf, 1, {-delta_E, Rational(0), Rational(1)});
  return ub;
}

EtalePtr UnitaryBaseData::tensor(const TowerPtr& fixed_field) const {
  return QuadraticEtale::make(fixed_field->scalar(delta_E));
}

EtaleElement UnitaryBaseData::embed(const EtaleElement& e, const EtalePtr& target) const {
  require(e.algebra() == E, ErrorKind::InvalidArgument, "element is not in E");
  require(target->delta() == target->base()->scalar(delta_E), ErrorKind::InvalidArgument,
          "target algebra is not a tensor product with E");
  const auto& t = target->base();
  return target->element(t->scalar(e.a().as_rational()), t->scalar(e.b().as_rational()));
}

FieldElement UnitaryBaseData::to_tower(const EtaleElement& e) const {
  require(e.algebra() == E, ErrorKind::InvalidArgument, "element is not in E");
  return FieldElement(E_tower, {e.a().as_rational(), e.b().as_rational()});
}

EtaleElement UnitaryBaseData::from_tower(const FieldElement& z) const {
  require(z.tower() == E_tower, ErrorKind::InvalidArgument, "element is not in the tower model of E");
  const auto& b = E->base();
  return E->element(b->scalar(z.coords()[0]), b->scalar(z.coords()[1]));
}

Poly<EtaleElement> charpoly_over_E(const EtaleElement& y, const UnitaryBaseData& ub) {
  const auto& alg = *y.algebra();
  require(alg.delta() == alg.base()->scalar(ub.delta_E), ErrorKind::InvalidArgument,
          "algebra is not a tensor product with E");
  Matrix<Rational> ma = mult_matrix(y.a());
  Matrix<Rational> mb = mult_matrix(y.b());
  std::size_t n = ma.size();
  const auto& fb = ub.E->base();
  Matrix<EtaleElement> m(n, std::vector<EtaleElement>(n, ub.E->scalar(Rational(0))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = ub.E->element(fb->scalar(ma[i][j]), fb->scalar(mb[i][j]));
  return charpoly(m, ub.E->scalar(Rational(1)));
}

std::string to_string(const EtaleElement& x) {
  if (x.b().is_zero()) return to_string(x.a());
  std::ostringstream os;
  if (!x.a().is_zero()) os << "(" << to_string(x.a()) << ") + ";
  os << "(" << to_string(x.b()) << ")*s";
  return os.str();
}

}  // namespace endo
