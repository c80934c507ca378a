#include "endo/factor.hpp"

#include <functional>

#include "endo/forms.hpp"

namespace endo {

namespace {

const IndexParam& find_index(const RegularParam& p, const std::string& name) {
  for (const auto& ip : p.indices)
    if (ip.name == name) return ip;
  fail(ErrorKind::IndexMismatch, "no index named " + name);
}

// (k - d) / 2; rejects a half-integer, which means a mis-tagged case.
long half_exponent(long k, int d) {
  long n = k - d;
  require(n % 2 == 0, ErrorKind::UnsupportedCase, "half-integral exponent for this parity of d");
  return n / 2;
}

EtaleElement from_F(const FieldElement& a, const EtalePtr& alg) {
  return alg->element(alg->base()->scalar(a.as_rational()));
}

EtaleElement evalF(const PolyQ& P, const EtaleElement& y) {
  const auto& alg = y.algebra();
  return P.eval(y, [&](const Rational& q) { return alg->scalar(q); });
}

EtaleElement evalE(const Poly<EtaleElement>& P, const EtaleElement& y, const UnitaryBaseData& ub) {
  const auto& alg = y.algebra();
  return P.eval(y, [&](const EtaleElement& c) { return ub.embed(c, alg); });
}

template <class R>
CharPolyPack<R> assemble(const RegularParam& y, const R& one, const std::function<Poly<R>(const EtaleElement&)>& cp) {
  CharPolyPack<R> pack{Poly<R>(one), Poly<R>(one), Poly<R>(one), Poly<R>(one)};
  for (const auto& ip : y.indices) {
    Poly<R> f = cp(ip.elem);
    if (ip.side == Side::Minus)
      pack.P_minus = pack.P_minus * f;
    else
      pack.P_plus = pack.P_plus * f;
  }
  pack.P = pack.P_minus * pack.P_plus;
  pack.dP = pack.P.derivative();
  return pack;
}

const FieldElement& need(const std::optional<FieldElement>& v, const char* what) {
  require(v.has_value(), ErrorKind::InvalidArgument, std::string(what) + " is required");
  return *v;
}

const EtaleElement& need_c(const IndexParam& ip) {
  require(ip.c.has_value(), ErrorKind::InvalidArgument, "index " + ip.name + " has no c on the group side");
  return *ip.c;
}

EtaleElement in_algebra(const EtaleElement& v, const EtalePtr& alg) { return EtaleElement(alg, v.a(), v.b()); }

int sign_of(const EtaleElement& C) {
  require(C.fixed(), ErrorKind::NotInFixedField, "C_i is not fixed by the involution: " + to_string(C));
  return sgn_value(C.a(), *C.algebra());
}

void push_index(FactorTrace& tr, const IndexParam& ip, const EtaleElement& C, int verdict) {
  tr.indices.push_back({ip.name, ip.algebra->name(), to_string(C.a()), verdict});
}

UnitCircleValue prefactors(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                           const EndoscopicDatum& e, FactorTrace& tr) {
  UnitCircleValue acc;
  if (g.kind == GroupCase::TwistedGlOdd) {
    auto pack = build_charpoly_pack(y);
    Rational arg = need(g.eta, "eta").as_rational() * need(x.x_D, "x_D").as_rational() * pack.P.eval(Rational(1)) *
                   pack.P_minus.eval(Rational(-1));
    FieldElement a = g.base->scalar(arg);
    UnitCircleValue v = e.chi ? eval_character(*e.chi, a) : UnitCircleValue();
    tr.prefactors.push_back({"chi(eta x_D P(1) P_minus(-1))", to_string(a), v});
    acc = acc * v;
  }
  if (is_unitary(g.kind)) {
    const auto& ub = *g.unitary;
    auto pack = build_charpoly_pack(y, ub);
    EtaleElement zero = ub.E->scalar(0), m1 = ub.E->scalar(-1);
    EtaleElement am = pack.P_minus.eval(zero) / pack.P_minus.eval(m1);
    EtaleElement ap = pack.P_plus.eval(zero) / pack.P_plus.eval(m1);
    UnitCircleValue vm = eval_character(e.mu_minus.value_or(TameCharacter{}), ub, am);
    UnitCircleValue vp = eval_character(e.mu_plus.value_or(TameCharacter{}), ub, ap);
    tr.prefactors.push_back({"mu_minus(P_minus(0) / P_minus(-1))", to_string(am), vm});
    tr.prefactors.push_back({"mu_plus(P_plus(0) / P_plus(-1))", to_string(ap), vp});
    acc = acc * vm * vp;
  }
  return acc;
}

UnitCircleValue product_over(Side side, const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                             const EndoscopicDatum& e, FactorTrace& tr) {
  UnitCircleValue acc;
  for (const auto& ip : y.indices) {
    if (ip.side != side || !ip.algebra->is_field()) continue;
    EtaleElement C = compute_C_unchecked(ip.name, y, x, g, e);
    int s = sign_of(C);
    push_index(tr, ip, C, s);
    acc = acc * UnitCircleValue::sign(s);
  }
  return acc;
}

}  // namespace

CharPolyPackF build_charpoly_pack(const RegularParam& y) {
  return assemble<Rational>(y, Rational(1), [](const EtaleElement& v) { return charpoly_over_base(v); });
}

CharPolyPackE build_charpoly_pack(const RegularParam& y, const UnitaryBaseData& ub) {
  return assemble<EtaleElement>(y, ub.E->scalar(1),
                                [&](const EtaleElement& v) { return charpoly_over_E(v, ub); });
}

EtaleElement compute_C_unchecked(const std::string& index, const RegularParam& y, const RegularParam& x,
                                 const GroupDescriptor& g, const EndoscopicDatum& e) {
  (void)e;
  const IndexParam& yi = find_index(y, index);
  const IndexParam& xi = find_index(x, index);
  const EtalePtr& alg = yi.algebra;
  const EtaleElement& yv = yi.elem;
  EtaleElement one = alg->scalar(1);
  const int d = g.d;
  FormulaCase fc = formula_case(g);

  if (is_unitary(g.kind)) {
    const auto& ub = *g.unitary;
    require(g.eta_E.has_value(), ErrorKind::InvalidArgument, "eta is required");
    auto pack = build_charpoly_pack(y, ub);
    EtaleElement eta = ub.embed(*g.eta_E, alg);
    EtaleElement core = -eta * evalE(pack.dP, yv, ub) * ub.embed(pack.P.eval(ub.E->scalar(-1)), alg).inverse();
    switch (fc) {
      case FormulaCase::UnitaryEven:
        return core * in_algebra(need_c(xi), alg) * yv.pow(half_exponent(2, d));
      case FormulaCase::UnitaryOdd:
        return core * in_algebra(need_c(xi), alg) * yv.pow(half_exponent(1, d)) * (one + yv);
      case FormulaCase::BcEven:
        return core * in_algebra(xi.elem, alg).inverse() * yv.pow(half_exponent(2, d)) * (one + yv);
      case FormulaCase::BcOdd:
        return core * in_algebra(xi.elem, alg).inverse() * yv.pow(half_exponent(3, d));
      default: break;
    }
    fail(ErrorKind::UnsupportedCase, "unexpected unitary formula");
  }

  auto pack = build_charpoly_pack(y);
  EtaleElement dP = evalF(pack.dP, yv);
  Rational Pm1 = pack.P.eval(Rational(-1));
  switch (fc) {
    case FormulaCase::Symplectic: {
      EtaleElement eta = from_F(need(g.eta, "eta"), alg);
      return -eta * in_algebra(need_c(xi), alg) * dP * Pm1 * yv.pow(half_exponent(2, d));
    }
    case FormulaCase::SoOdd: {
      EtaleElement eta = from_F(need(g.eta, "eta"), alg);
      return -eta * in_algebra(need_c(xi), alg) * dP * (Pm1 * 2) * yv.pow(half_exponent(3, d)) * (one + yv) *
             (yv - one).inverse();
    }
    case FormulaCase::SoEven: {
      EtaleElement eta = from_F(need(g.eta, "eta"), alg);
      return eta * in_algebra(need_c(xi), alg) * dP * (Pm1 * 2) * yv.pow(half_exponent(2, d)) * (one + yv) *
             (yv - one).inverse();
    }
    case FormulaCase::TwistedEven: {
      EtaleElement eta = from_F(need(g.eta, "eta"), alg);
      return eta * in_algebra(xi.elem, alg).inverse() * dP * Pm1 * yv.pow(half_exponent(2, d)) * (one + yv);
    }
    case FormulaCase::TwistedOdd: {
      EtaleElement xD = from_F(need(x.x_D, "x_D"), alg);
      return xD * in_algebra(xi.elem, alg).inverse() * dP * pack.P.eval(Rational(1)) *
             yv.pow(half_exponent(3, d)) * (yv - one);
    }
    default: break;
  }
  fail(ErrorKind::UnsupportedCase, "unexpected formula");
}

FieldElement compute_C(const std::string& index, const RegularParam& y, const RegularParam& x,
                       const GroupDescriptor& g, const EndoscopicDatum& e) {
  EtaleElement C = compute_C_unchecked(index, y, x, g, e);
  require(C.fixed(), ErrorKind::NotInFixedField, "C_" + index + " is not fixed by the involution: " + to_string(C));
  require(!C.a().is_zero(), ErrorKind::DivisionByZero, "C_" + index + " vanishes");
  return C.a();
}

DeltaResult compute_delta(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                          const EndoscopicDatum& e) {
  DeltaResult r;
  r.trace.formula = case_name(formula_case(g));
  UnitCircleValue v = prefactors(y, x, g, e, r.trace);
  v = v * product_over(Side::Minus, y, x, g, e, r.trace);
  r.value = v;
  r.trace.result = v;
  return r;
}

UnitCircleValue swapped_delta(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                              const EndoscopicDatum& e) {
  require(g.kind == GroupCase::SoOdd || g.kind == GroupCase::SoEven || g.kind == GroupCase::Unitary,
          ErrorKind::UnsupportedCase, "the factors can only be exchanged in orthogonal and unitary cases");
  FactorTrace tr;
  // Exchanging the factors exchanges mu^- and mu^+ together with the
  // polynomials they are evaluated on, so the prefactor is unchanged.
  return prefactors(y, x, g, e, tr) * product_over(Side::Plus, y, x, g, e, tr);
}

namespace {

QuadraticSpace minus_form(const RegularParam& y, const GroupDescriptor& g) {
  std::vector<EtaleElement> cs;
  for (const auto& ip : y.indices) {
    if (ip.side != Side::Minus) continue;
    require(ip.c.has_value(), ErrorKind::InvalidArgument, "index " + ip.name + " needs c on the endoscopic side");
    cs.push_back(*ip.c);
  }
  return trace_form(g.base, cs);
}

}  // namespace

FieldElement eta_of_minus_factor(const RegularParam& y, const GroupDescriptor& g, const EndoscopicDatum& e) {
  require(e.delta_minus.has_value(), ErrorKind::InvalidArgument, "delta^- is required");
  auto q = minus_form(y, g);
  int n = q.dim() / 2;
  require(n >= 1, ErrorKind::InvalidArgument, "minus factor has dimension 0");
  const auto& F = g.base;
  for (const auto& cls : square_classes(F)) {
    FieldElement a = class_representative(F, cls);
    auto model = QuadraticSpace::hyperbolic(F, n - 1) + QuadraticSpace::diagonal(F, {a, -(a * *e.delta_minus)});
    if (isomorphic(q, model)) return (n - 1) % 2 ? -a : a;
  }
  fail(ErrorKind::Degenerate, "the minus-side form is not quasi-split");
}

UnitCircleValue special_case_indicator(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                                       const EndoscopicDatum& e) {
  require(g.kind == GroupCase::TwistedGlEven, ErrorKind::UnsupportedCase, "needs the twisted even case");
  require(e.d_minus == g.d && e.d_plus == 1, ErrorKind::UnsupportedCase, "needs d^- = d and d^+ = 1");
  require(!g.base->base().is_real(), ErrorKind::UnsupportedCase, "needs a p-adic ground field");
  std::vector<EtaleElement> xs;
  for (const auto& ip : x.indices) xs.push_back(ip.elem);
  auto qx = symmetrize_twisted(g.base, xs);
  auto qm = minus_form(y, g);
  return UnitCircleValue::sign(isomorphic(qx, qm) ? 1 : -1);
}

UnitCircleValue eval_character(const TameCharacter& mu, const UnitaryBaseData& ub, const EtaleElement& arg) {
  return eval_tame(mu, ub, arg);
}

UnitCircleValue eval_character(const FieldElement& chi, const FieldElement& arg) { return eval_quadratic(chi, arg); }

}  // namespace endo
