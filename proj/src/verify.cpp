#include "endo/verify.hpp"

namespace endo {

namespace {

const IndexParam& find_index(const RegularParam& p, const std::string& name, std::size_t* pos = nullptr) {
  for (std::size_t k = 0; k < p.indices.size(); ++k)
    if (p.indices[k].name == name) {
      if (pos) *pos = k;
      return p.indices[k];
    }
  fail(ErrorKind::IndexMismatch, "no index named " + name);
}

EtaleElement evalF(const PolyQ& P, const EtaleElement& z) {
  const auto& alg = z.algebra();
  return P.eval(z, [&](const Rational& q) { return alg->scalar(q); });
}

EtaleElement from_F(const FieldElement& a, const EtalePtr& alg) {
  return alg->element(alg->base()->scalar(a.as_rational()));
}

int sgn_fixed(const EtaleElement& v) {
  require(v.fixed(), ErrorKind::NotInFixedField, "element is not fixed by the involution: " + to_string(v));
  return sgn_value(v.a(), *v.algebra());
}

Rational det_of_trace_form(const FieldElement& c, const EtalePtr& alg) {
  return determinant(trace_bilinear(alg->element(c)), Rational(1));
}

}  // namespace

EtaleElement cayley(const EtaleElement& y) {
  auto one = y.algebra()->scalar(1);
  auto den = one + y;
  require(!den.norm().is_zero(), ErrorKind::PoleAtMinusOne, "1 + y is not invertible");
  return (y - one) / den;
}

EtaleElement cayley_inv(const EtaleElement& X) {
  auto one = X.algebra()->scalar(1);
  auto den = one - X;
  require(!den.norm().is_zero(), ErrorKind::PoleAtOne, "1 - X is not invertible");
  return (one + X) / den;
}

LieParam lie_param(const RegularParam& y) {
  LieParam L;
  for (const auto& ip : y.indices) L.X.push_back(cayley(ip.elem));
  return L;
}

PolyQ lie_charpoly(const LieParam& L) {
  PolyQ Q(std::vector<Rational>{0, 1});
  for (const auto& X : L.X) Q = Q * charpoly_over_base(X);
  return Q;
}

QuadraticSpace twisting_form(const TowerPtr& base, int d, const FieldElement& nu) {
  Matrix<FieldElement> gram(d, std::vector<FieldElement>(d, base->zero()));
  for (int k = 1; k <= d; ++k) gram[k - 1][d - k] = nu * Rational(k % 2 ? -1 : 1);
  return QuadraticSpace(base, gram);
}

bool presents_twisting_form(const Auxiliary& aux, const RegularParam& x, const GroupDescriptor& g) {
  require(g.nu.has_value(), ErrorKind::InvalidArgument, "nu is required");
  require(aux.c.size() == x.indices.size(), ErrorKind::IndexMismatch, "one auxiliary c per index");
  std::vector<EtaleElement> cs;
  for (std::size_t k = 0; k < aux.c.size(); ++k) cs.push_back(x.indices[k].algebra->element(aux.c[k]));
  return isomorphic(trace_form(g.base, cs, aux.c_D), twisting_form(g.base, g.d, *g.nu));
}

Auxiliary auxiliary_presentation(const RegularParam& x, const GroupDescriptor& g) {
  require(g.kind == GroupCase::TwistedGlOdd, ErrorKind::UnsupportedCase, "auxiliary data exist for the twisted odd case");
  require(g.nu.has_value(), ErrorKind::InvalidArgument, "nu is required");
  std::vector<std::vector<FieldElement>> menus;
  for (const auto& ip : x.indices) {
    std::vector<FieldElement> reps;
    for (const auto& cls : square_classes(ip.algebra->base())) reps.push_back(class_representative(ip.algebra->base(), cls));
    menus.push_back(std::move(reps));
  }
  std::vector<std::size_t> pick(menus.size(), 0);
  while (true) {
    Auxiliary aux{{}, g.base->one()};
    Rational det = -g.nu->as_rational();
    for (std::size_t k = 0; k < menus.size(); ++k) {
      aux.c.push_back(menus[k][pick[k]]);
      det /= det_of_trace_form(aux.c.back(), x.indices[k].algebra);
    }
    aux.c_D = g.base->scalar(det);
    if (presents_twisting_form(aux, x, g)) return aux;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == menus[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  fail(ErrorKind::Degenerate, "no auxiliary presentation of the twisting form");
}

TwistedOddData make_twisted_odd_data(const GroupDescriptor& g, const EndoscopicDatum& e, const RegularParam& y,
                                     const RegularParam& x, const Auxiliary& aux) {
  require(g.kind == GroupCase::TwistedGlOdd, ErrorKind::UnsupportedCase, "identity suite needs the twisted odd case");
  require(aux.c.size() == y.indices.size(), ErrorKind::IndexMismatch, "one auxiliary c per index");
  return TwistedOddData{g, e, y, x, aux, lie_param(y)};
}

FieldElement eta_from_nu(const FieldElement& nu) { return -nu; }

UnitCircleValue delta_I_lie(const TwistedOddData& data, const FieldElement& eta) {
  PolyQ dQ = lie_charpoly(data.lie).derivative();
  UnitCircleValue v;
  for (std::size_t k = 0; k < data.y.indices.size(); ++k) {
    const auto& ip = data.y.indices[k];
    if (ip.side != Side::Minus || !ip.algebra->is_field()) continue;
    const auto& alg = ip.algebra;
    auto X = EtaleElement(alg, data.lie.X[k].a(), data.lie.X[k].b());
    auto arg = from_F(eta, alg) * alg->element(data.aux.c[k]) * evalF(dQ, X);
    v = v * UnitCircleValue::sign(sgn_fixed(arg));
  }
  return v;
}

bool li_identity_1(const std::string& i, const std::string& j, const TwistedOddData& data) {
  std::size_t pi = 0, pj = 0;
  const auto& yi = find_index(data.y, i, &pi);
  const auto& yj = find_index(data.y, j, &pj);
  const auto& alg = yi.algebra;
  PolyQ Pj = charpoly_over_base(yj.elem);
  PolyQ Qj = charpoly_over_base(data.lie.X[pj]);
  int n = yj.algebra->degree_over_base();
  auto one = alg->scalar(1);
  const auto& Xi = data.lie.X[pi];
  auto lhs = evalF(Pj, yi.elem);
  auto rhs = (one - Xi).inverse().pow(n) * Pj.eval(Rational(-1)) * evalF(Qj, Xi);
  return lhs == rhs;
}

bool li_identity_2(const std::string& i, const TwistedOddData& data) {
  std::size_t pi = 0;
  const auto& yi = find_index(data.y, i, &pi);
  const auto& alg = yi.algebra;
  PolyQ P(Rational(1));
  for (const auto& ip : data.y.indices) P = P * charpoly_over_base(ip.elem);
  PolyQ Py = PolyQ(std::vector<Rational>{-1, 1}) * P;
  PolyQ dQ = lie_charpoly(data.lie).derivative();
  auto one = alg->scalar(1);
  const auto& Xi = data.lie.X[pi];
  auto lhs = (one - Xi).pow(data.g.d - 2) * evalF(Py.derivative(), yi.elem) * Rational(2);
  auto rhs = evalF(dQ, Xi) * (-Py.eval(Rational(-1)));
  return lhs == rhs;
}

bool check_Aij_is_norm(const std::string& i, const std::string& j, const TwistedOddData& data) {
  std::size_t pi = 0, pj = 0;
  const auto& yi = find_index(data.y, i, &pi);
  const auto& yj = find_index(data.y, j, &pj);
  const auto& xi = data.x.indices.at(pi);
  const auto& xj = data.x.indices.at(pj);
  const auto& alg = yi.algebra;
  int n = yj.algebra->degree_over_base();
  PolyQ Pj = charpoly_over_base(yj.elem);
  PolyQ Qj = charpoly_over_base(data.lie.X[pj]);
  auto ci = alg->element(data.aux.c[pi]);
  auto cj = yj.algebra->element(data.aux.c[pj]);
  auto xi_e = EtaleElement(alg, xi.elem.a(), xi.elem.b());
  auto xj_e = EtaleElement(yj.algebra, xj.elem.a(), xj.elem.b());
  Rational normj = norm_to_base(cj * xj_e.tau().inverse());
  auto A = (ci.inverse() * xi_e.tau()).pow(n) * normj * evalF(Pj, yi.elem) * evalF(Qj, data.lie.X[pi]).inverse();
  return sgn_fixed(A) == 1;
}

bool check_cD_square_class(const TwistedOddData& data) {
  require(data.g.eta.has_value(), ErrorKind::InvalidArgument, "eta is required");
  PolyQ P(Rational(1));
  for (const auto& ip : data.y.indices) P = P * charpoly_over_base(ip.elem);
  Rational v = data.aux.c_D.as_rational() * data.g.eta->as_rational() * P.eval(Rational(1)) * P.eval(Rational(-1));
  return is_square(data.g.base->scalar(v));
}

EtaleElement B_element(const std::string& i, const TwistedOddData& data) {
  require(data.g.eta.has_value(), ErrorKind::InvalidArgument, "eta is required");
  std::size_t pi = 0;
  const auto& yi = find_index(data.y, i, &pi);
  const auto& alg = yi.algebra;
  const auto& xi = data.x.indices.at(pi);
  auto xi_e = EtaleElement(alg, xi.elem.a(), xi.elem.b());
  PolyQ dQ = lie_charpoly(data.lie).derivative();
  return from_F(*data.g.eta, alg) * evalF(dQ, data.lie.X[pi]) * (yi.elem + alg->scalar(1)) * xi_e.tau() *
         Rational(1, 2);
}

bool check_Bi_Ci_consistency(const std::string& i, const TwistedOddData& data) {
  require(data.x.x_D.has_value(), ErrorKind::InvalidArgument, "x_D is required");
  const auto& alg = find_index(data.y, i).algebra;
  int sC = sgn_value(compute_C(i, data.y, data.x, data.g, data.e), *alg);
  int sB = sgn_fixed(B_element(i, data));
  int sD = sgn_fixed(from_F(data.aux.c_D * *data.x.x_D, alg));
  return sC == sB * sD;
}

}  // namespace endo
