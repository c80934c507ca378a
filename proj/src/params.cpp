#include "endo/params.hpp"

#include <algorithm>
#include <map>

#include "endo/forms.hpp"

namespace endo {

std::string case_name(GroupCase c) {
  switch (c) {
    case GroupCase::Symplectic: return "symplectic";
    case GroupCase::SoOdd: return "so_odd";
    case GroupCase::SoEven: return "so_even";
    case GroupCase::TwistedGlEven: return "twisted_gl_even";
    case GroupCase::TwistedGlOdd: return "twisted_gl_odd";
    case GroupCase::Unitary: return "unitary";
    case GroupCase::BcUnitary: return "bc_unitary";
  }
  return "?";
}

std::string case_name(FormulaCase c) {
  switch (c) {
    case FormulaCase::Symplectic: return "symplectic";
    case FormulaCase::SoOdd: return "odd orthogonal";
    case FormulaCase::SoEven: return "even orthogonal";
    case FormulaCase::TwistedEven: return "twisted linear, even d";
    case FormulaCase::TwistedOdd: return "twisted linear, odd d";
    case FormulaCase::UnitaryEven: return "unitary, even d";
    case FormulaCase::UnitaryOdd: return "unitary, odd d";
    case FormulaCase::BcEven: return "twisted unitary, even d";
    case FormulaCase::BcOdd: return "twisted unitary, odd d";
  }
  return "?";
}

GroupCase parse_group_case(const std::string& s) {
  for (auto c : {GroupCase::Symplectic, GroupCase::SoOdd, GroupCase::SoEven, GroupCase::TwistedGlEven,
                 GroupCase::TwistedGlOdd, GroupCase::Unitary, GroupCase::BcUnitary})
    if (case_name(c) == s) return c;
  fail(ErrorKind::ParseError, "unknown group case '" + s + "'");
}

FormulaCase formula_case(const GroupDescriptor& g) {
  bool even = g.d % 2 == 0;
  switch (g.kind) {
    case GroupCase::Symplectic: return FormulaCase::Symplectic;
    case GroupCase::SoOdd: return FormulaCase::SoOdd;
    case GroupCase::SoEven: return FormulaCase::SoEven;
    case GroupCase::TwistedGlEven: return FormulaCase::TwistedEven;
    case GroupCase::TwistedGlOdd: return FormulaCase::TwistedOdd;
    case GroupCase::Unitary: return even ? FormulaCase::UnitaryEven : FormulaCase::UnitaryOdd;
    case GroupCase::BcUnitary: return even ? FormulaCase::BcEven : FormulaCase::BcOdd;
  }
  fail(ErrorKind::UnsupportedCase, "unknown case");
}

std::string to_string(Side s) { return s == Side::Minus ? "minus" : "plus"; }

namespace {

// Shape of one factor of the endoscopic group.
enum class FactorType { SoEven, SoOdd, Sp, U };

struct FactorShape {
  FactorType minus, plus;
  int dim_offset;  // d^- + d^+ = d + dim_offset
};

FactorShape shape_of(GroupCase c) {
  switch (c) {
    case GroupCase::Symplectic: return {FactorType::SoEven, FactorType::Sp, 0};
    case GroupCase::SoOdd: return {FactorType::SoOdd, FactorType::SoOdd, 1};
    case GroupCase::SoEven: return {FactorType::SoEven, FactorType::SoEven, 0};
    case GroupCase::TwistedGlEven: return {FactorType::SoEven, FactorType::SoOdd, 1};
    case GroupCase::TwistedGlOdd: return {FactorType::SoOdd, FactorType::Sp, 0};
    case GroupCase::Unitary:
    case GroupCase::BcUnitary: return {FactorType::U, FactorType::U, 0};
  }
  fail(ErrorKind::UnsupportedCase, "unknown case");
}

// Dimension of V^{+-} carried by the indices: the D line of an odd
// orthogonal factor is not indexed.
int indexed_dim(FactorType t, int d) { return t == FactorType::SoOdd ? d - 1 : d; }

bool square(const FieldElement& a) { return is_square(a); }

// [F_i : F] outside the unitary cases, [F_{+-i} : F] = [F_i : E] inside.
int index_degree(const IndexParam& ip, const GroupDescriptor& g) {
  int k = ip.algebra->base()->degree();
  return is_unitary(g.kind) ? k : 2 * k;
}

FieldElement base_norm(const FieldElement& a, const TowerPtr& base) { return base->scalar(norm_to_base(a)); }

void check_index_shape(const IndexParam& ip, const GroupDescriptor& g, ValidationReport& r) {
  const std::string who = "index " + ip.name;
  if (!ip.algebra) {
    r.add("index algebra", who + ": no algebra");
    return;
  }
  if (!(ip.algebra->base()->base() == g.base->base()))
    r.add("index algebra", who + ": F_{+-i} is not over the ground field");
  if (ip.elem.algebra() != ip.algebra) r.add("index algebra", who + ": element lives in another algebra");
  if (is_unitary(g.kind) && g.unitary &&
      ip.algebra->delta() != ip.algebra->base()->scalar(g.unitary->delta_E))
    r.add("index algebra", who + ": F_i must be F_{+-i} tensored with E");
}

bool symplectic_sign(FactorType t) { return t == FactorType::Sp; }

void check_c(const IndexParam& ip, bool antisymmetric, ValidationReport& r) {
  const std::string who = "index " + ip.name;
  if (!ip.c) return;
  if (ip.c->algebra() != ip.algebra) {
    r.add("coefficient", who + ": c lives in another algebra");
    return;
  }
  if (ip.c->norm().is_zero()) r.add("coefficient", who + ": c is not invertible");
  if (antisymmetric) {
    if (ip.c->tau() != -*ip.c) r.add("coefficient symmetry", who + ": need tau(c) = -c");
  } else if (!ip.c->fixed()) {
    r.add("coefficient symmetry", who + ": need tau(c) = c");
  }
}

std::vector<const IndexParam*> on_side(const RegularParam& p, Side s) {
  std::vector<const IndexParam*> out;
  for (const auto& ip : p.indices)
    if (ip.side == s) out.push_back(&ip);
  return out;
}

std::vector<const IndexParam*> all_of(const RegularParam& p) {
  std::vector<const IndexParam*> out;
  for (const auto& ip : p.indices) out.push_back(&ip);
  return out;
}

bool same_algebra(const EtalePtr& a, const EtalePtr& b) {
  if (a == b) return true;
  return a && b && a->base() == b->base() && a->delta() == b->delta();
}

}  // namespace

FieldElement norm_minus_delta(const QuadraticEtale& alg, const TowerPtr& base) {
  return base_norm(-alg.delta(), base);
}

FieldElement trace_discriminant(const std::vector<const IndexParam*>& indices, const TowerPtr& base) {
  FieldElement acc = base->one();
  int n = 0;
  for (const auto* ip : indices) {
    acc = acc * norm_minus_delta(*ip->algebra, base);
    n += ip->algebra->base()->degree();
  }
  return n % 2 ? -acc : acc;
}

ValidationReport validate_group(const GroupDescriptor& g) {
  ValidationReport r;
  if (!g.base) {
    r.add("ground field", "no ground field");
    return r;
  }
  if (!g.base->is_trivial()) r.add("ground field", "the ground field must be Q_p or R itself");
  bool want_even = g.kind == GroupCase::Symplectic || g.kind == GroupCase::SoEven ||
                   g.kind == GroupCase::TwistedGlEven;
  bool want_odd = g.kind == GroupCase::SoOdd || g.kind == GroupCase::TwistedGlOdd;
  if (g.d < 1) r.add("dimension", "d must be positive");
  if (want_even && g.d % 2 != 0) r.add("dimension parity", case_name(g.kind) + " needs even d");
  if (want_odd && g.d % 2 == 0) r.add("dimension parity", case_name(g.kind) + " needs odd d");

  if (g.kind == GroupCase::SoEven) {
    if (!g.delta || g.delta->is_zero())
      r.add("discriminant", "so_even needs a nonzero discriminant");
    else if (g.d == 2 && square(*g.delta))
      r.add("excluded split torus", "so_even with d = 2 and trivial discriminant is excluded");
  }

  if (is_unitary(g.kind)) {
    if (g.base->base().is_real() || g.base->base().dyadic())
      r.add("unitary ground field", "unitary cases need a non-dyadic p-adic ground field");
    if (!g.unitary) {
      r.add("quadratic extension", "unitary cases need E");
      return r;
    }
    if (!g.eta_E || g.eta_E->algebra() != g.unitary->E || g.eta_E->norm().is_zero()) {
      r.add("eta", "unitary cases need an invertible eta in E");
    } else if (g.kind == GroupCase::Unitary) {
      if (g.d % 2 == 1 && !g.eta_E->fixed()) r.add("eta parity", "odd d needs eta in F");
      if (g.d % 2 == 0 && g.eta_E->tau() != -*g.eta_E) r.add("eta parity", "even d needs tau(eta) = -eta");
    }
    if (g.kind == GroupCase::BcUnitary) {
      if (!g.nu_E || g.nu_E->algebra() != g.unitary->E || g.nu_E->norm().is_zero())
        r.add("twisting scalar", "bc_unitary needs an invertible nu in E");
      else if (g.eta_E && !g.eta_E->norm().is_zero() && !(*g.eta_E / *g.nu_E).fixed())
        r.add("eta and nu", "eta / nu must lie in F");
    }
    return r;
  }

  if (!g.eta || g.eta->is_zero()) r.add("eta", "an invertible eta in F is required");
  if (g.kind == GroupCase::TwistedGlEven || g.kind == GroupCase::TwistedGlOdd) {
    if (!g.nu || g.nu->is_zero()) {
      r.add("twisting scalar", "twisted cases need an invertible nu");
    } else if (g.kind == GroupCase::TwistedGlOdd && g.eta && !g.eta->is_zero() &&
               !square(-(*g.eta * *g.nu))) {
      r.add("eta and nu", "odd twisted case needs eta = -nu up to squares");
    }
  }
  return r;
}

namespace {

void check_factor(const std::string& label, FactorType t, int dim, const std::optional<FieldElement>& delta,
                  ValidationReport& r) {
  if (dim < 0) {
    r.add("endoscopic dimensions", label + " has negative dimension");
    return;
  }
  switch (t) {
    case FactorType::SoEven:
      if (dim % 2) r.add("endoscopic dimensions", label + " is even orthogonal and needs even dimension");
      if (!delta || delta->is_zero()) {
        r.add("endoscopic discriminant", label + " needs a nonzero discriminant");
      } else {
        if (dim == 2 && square(*delta))
          r.add("ellipticity", label + " of dimension 2 with trivial discriminant is excluded");
        if (dim == 0 && !square(*delta))
          r.add("endoscopic discriminant", label + " of dimension 0 has trivial discriminant");
      }
      break;
    case FactorType::SoOdd:
      if (dim % 2 == 0) r.add("endoscopic dimensions", label + " is odd orthogonal and needs odd dimension");
      break;
    case FactorType::Sp:
      if (dim % 2) r.add("endoscopic dimensions", label + " is symplectic and needs even dimension");
      break;
    case FactorType::U: break;
  }
}

}  // namespace

ValidationReport validate_endoscopic(const GroupDescriptor& g, const EndoscopicDatum& e) {
  ValidationReport r;
  auto sh = shape_of(g.kind);
  if (e.d_minus + e.d_plus != g.d + sh.dim_offset)
    r.add("endoscopic dimensions", "d^- + d^+ must equal " + std::to_string(g.d + sh.dim_offset));
  check_factor("H^-", sh.minus, e.d_minus, e.delta_minus, r);
  check_factor("H^+", sh.plus, e.d_plus, e.delta_plus, r);
  if (g.kind == GroupCase::SoEven && e.delta_minus && e.delta_plus && g.delta &&
      !square(*e.delta_minus * *e.delta_plus * *g.delta))
    r.add("discriminant product", "delta^- delta^+ must equal delta up to squares");
  if (g.kind == GroupCase::TwistedGlOdd && e.chi && e.chi->is_zero())
    r.add("quadratic character", "chi must be a nonzero square class");
  if (is_unitary(g.kind) && g.unitary) {
    int pm = g.kind == GroupCase::BcUnitary ? e.d_plus + 1 : e.d_plus;
    int pp = e.d_minus;
    if (!restriction_matches(e.mu_minus.value_or(TameCharacter{}), *g.unitary, pm))
      r.add("character restriction", "mu^- on F^x must be sgn_{E/F}^" + std::to_string(pm));
    if (!restriction_matches(e.mu_plus.value_or(TameCharacter{}), *g.unitary, pp))
      r.add("character restriction", "mu^+ on F^x must be sgn_{E/F}^" + std::to_string(pp));
  }
  return r;
}

ValidationReport validate_endoscopic_param(const RegularParam& y, const GroupDescriptor& g,
                                           const EndoscopicDatum& e) {
  ValidationReport r;
  auto sh = shape_of(g.kind);
  int sum[2] = {0, 0};
  for (const auto& ip : y.indices) {
    check_index_shape(ip, g, r);
    if (!ip.algebra || ip.elem.algebra() != ip.algebra) continue;
    if (ip.elem.norm() != ip.algebra->base()->one()) r.add("norm one", "index " + ip.name + ": y tau(y) != 1");
    FactorType t = ip.side == Side::Minus ? sh.minus : sh.plus;
    check_c(ip, symplectic_sign(t), r);
    sum[ip.side == Side::Minus ? 0 : 1] += index_degree(ip, g);
  }
  int want_minus = indexed_dim(sh.minus, e.d_minus), want_plus = indexed_dim(sh.plus, e.d_plus);
  if (sum[0] != want_minus)
    r.add("dimension bookkeeping", "indices on the minus side span " + std::to_string(sum[0]) + ", need " +
                                       std::to_string(want_minus));
  if (sum[1] != want_plus)
    r.add("dimension bookkeeping", "indices on the plus side span " + std::to_string(sum[1]) + ", need " +
                                       std::to_string(want_plus));
  if (!r.ok()) return r;
  auto disc_check = [&](FactorType t, Side s, const std::optional<FieldElement>& delta, const char* label) {
    if (t != FactorType::SoEven || !delta) return;
    if (!square(trace_discriminant(on_side(y, s), g.base) * *delta))
      r.add("endoscopic discriminant", std::string(label) + ": the indexed tori do not fit a space of discriminant " +
                                           to_string(*delta));
  };
  disc_check(sh.minus, Side::Minus, e.delta_minus, "H^-");
  disc_check(sh.plus, Side::Plus, e.delta_plus, "H^+");
  return r;
}

ValidationReport validate_group_param(const RegularParam& x, const GroupDescriptor& g) {
  ValidationReport r;
  int sum = 0;
  bool twisted = is_twisted(g.kind);
  for (const auto& ip : x.indices) {
    check_index_shape(ip, g, r);
    if (!ip.algebra || ip.elem.algebra() != ip.algebra) continue;
    const std::string who = "index " + ip.name;
    if (twisted) {
      if (ip.elem.norm().is_zero()) r.add("invertible parameter", who + ": x is not invertible");
    } else {
      if (ip.elem.norm() != ip.algebra->base()->one()) r.add("norm one", who + ": x tau(x) != 1");
      if (!ip.c)
        r.add("coefficient", who + ": c is required on the group side");
      else
        check_c(ip, g.kind == GroupCase::Symplectic, r);
    }
    sum += index_degree(ip, g);
  }
  bool line = g.kind == GroupCase::SoOdd || g.kind == GroupCase::TwistedGlOdd;
  if (sum + (line ? 1 : 0) != g.d)
    r.add("dimension bookkeeping", "indices span " + std::to_string(sum) + (line ? " plus the line D" : "") +
                                       ", need d = " + std::to_string(g.d));
  if (g.kind == GroupCase::TwistedGlOdd && (!x.x_D || x.x_D->is_zero()))
    r.add("line coefficient", "twisted odd case needs an invertible x_D");
  if (!r.ok()) return r;
  if (g.kind == GroupCase::SoEven && g.delta && !square(trace_discriminant(all_of(x), g.base) * *g.delta))
    r.add("group discriminant", "the indexed tori do not fit a space of discriminant " + to_string(*g.delta));
  if (g.kind == GroupCase::SoOdd && x.d_line && g.eta) {
    if (x.d_line->is_zero())
      r.add("line coefficient", "the D-line coefficient must be invertible");
    else if (!square(*x.d_line * forced_d_line(x, g)))
      r.add("line coefficient", "the space must have determinant eta up to squares");
  }
  return r;
}

namespace {

template <class R>
bool nonzero_at(const Poly<R>& p, const R& pt) {
  return !is_zero(p.eval(pt));
}

}  // namespace

bool check_regularity(const RegularParam& y, const GroupDescriptor& g) {
  if (is_unitary(g.kind)) {
    require(g.unitary.has_value(), ErrorKind::InvalidArgument, "unitary case without E");
    const auto& E = g.unitary->E;
    Poly<EtaleElement> P(E->scalar(1));
    for (const auto& ip : y.indices) P = P * charpoly_over_E(ip.elem, *g.unitary);
    if (!is_squarefree(P)) return false;
    return nonzero_at(P, E->scalar(-1));
  }
  PolyQ P(Rational(1));
  for (const auto& ip : y.indices) P = P * charpoly_over_base(ip.elem);
  if (!is_squarefree(P)) return false;
  bool at_minus = nonzero_at(P, Rational(-1)), at_plus = nonzero_at(P, Rational(1));
  switch (g.kind) {
    case GroupCase::Symplectic:
    case GroupCase::TwistedGlEven: return at_minus;
    default: return at_minus && at_plus;
  }
}

bool match_stable_classes(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                          const EndoscopicDatum&) {
  std::map<std::string, const IndexParam*> xs;
  for (const auto& ip : x.indices) xs[ip.name] = &ip;
  require(xs.size() == x.indices.size(), ErrorKind::IndexMismatch, "repeated index name");
  require(y.indices.size() == x.indices.size(), ErrorKind::IndexMismatch, "index sets differ in size");
  for (const auto& yi : y.indices) {
    auto it = xs.find(yi.name);
    require(it != xs.end(), ErrorKind::IndexMismatch, "index " + yi.name + " missing on the group side");
    const IndexParam& xi = *it->second;
    require(same_algebra(yi.algebra, xi.algebra), ErrorKind::IndexMismatch,
            "index " + yi.name + " uses different algebras on the two sides");
    // Compare in y's algebra so that equal-but-distinct algebra objects work.
    EtaleElement xv(yi.algebra, xi.elem.a(), xi.elem.b());
    if (!is_twisted(g.kind)) {
      if (xv != yi.elem) return false;
      continue;
    }
    EtaleElement target = yi.elem;
    if (g.d % 2 == 0) target = -target;
    if (g.kind == GroupCase::BcUnitary) {
      require(g.nu_E.has_value(), ErrorKind::InvalidArgument, "bc_unitary without nu");
      EtaleElement ratio = *g.nu_E / g.nu_E->tau();
      target = target * g.unitary->embed(ratio, yi.algebra);
    }
    if (xv / xv.tau() != target) return false;
  }
  return true;
}

std::string stable_class_of(const RegularParam& p, const GroupDescriptor& g) {
  std::vector<std::string> parts;
  for (const auto& ip : p.indices) {
    EtaleElement v = is_twisted(g.kind) ? ip.elem / ip.elem.tau() : ip.elem;
    parts.push_back(ip.algebra->name() + " : " + to_string(v));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& s : parts) key += (key.empty() ? "" : " ; ") + s;
  return "{" + key + "}";
}

FieldElement forced_d_line(const RegularParam& x, const GroupDescriptor& g) {
  require(g.eta.has_value(), ErrorKind::InvalidArgument, "eta is required");
  FieldElement acc = *g.eta;
  for (const auto& ip : x.indices) acc = acc * norm_minus_delta(*ip.algebra, g.base);
  return acc;
}

namespace {

// Hermitian spaces over E are classified by dimension and det in
// F^x / N(E^x). The quasi-split model has det eta^d.
Cocycle unitary_cocycle(const RegularParam& x, const GroupDescriptor& g) {
  const auto& ub = *g.unitary;
  const auto& F = g.base;
  FieldElement det = F->one();
  for (const auto& ip : x.indices) {
    require(ip.c.has_value() && ip.c->fixed(), ErrorKind::InvalidArgument, "index " + ip.name + " needs c in F_{+-i}");
    const TowerPtr& t = ip.algebra->base();
    int n = t->degree();
    Matrix<Rational> gram(n, std::vector<Rational>(n, Rational(0)));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) gram[j][k] = trace_to_base(t->basis(j) * t->basis(k) * ip.c->a());
    det = det * F->scalar(determinant(gram, Rational(1)));
  }
  EtaleElement model = g.eta_E->pow(g.d);
  require(model.fixed(), ErrorKind::NotInFixedField, "eta^d is not in F");
  FieldElement dE = F->scalar(ub.delta_E);
  return hilbert_symbol(det * model.a(), dE) == 1 ? Cocycle::Trivial : Cocycle::Nontrivial;
}

}  // namespace

std::optional<Cocycle> cocycle_class_of(const RegularParam& x, const GroupDescriptor& g) {
  if (g.kind == GroupCase::Unitary) {
    require(g.unitary.has_value() && g.eta_E.has_value(), ErrorKind::InvalidArgument, "unitary case needs E and eta");
    return unitary_cocycle(x, g);
  }
  if (g.kind != GroupCase::SoOdd && g.kind != GroupCase::SoEven) return std::nullopt;
  require(g.eta.has_value(), ErrorKind::InvalidArgument, "eta is required");
  std::vector<EtaleElement> cs;
  for (const auto& ip : x.indices) {
    require(ip.c.has_value(), ErrorKind::InvalidArgument, "index " + ip.name + " has no c");
    cs.push_back(*ip.c);
  }
  const auto& F = g.base;
  int n = g.d / 2;
  if (g.kind == GroupCase::SoOdd) {
    FieldElement line = x.d_line ? *x.d_line : forced_d_line(x, g);
    auto V = trace_form(F, cs, line);
    FieldElement a = n % 2 ? -*g.eta : *g.eta;
    auto model = QuadraticSpace::hyperbolic(F, n) + QuadraticSpace::diagonal(F, {a});
    return isomorphic(V, model) ? Cocycle::Trivial : Cocycle::Nontrivial;
  }
  require(g.delta.has_value(), ErrorKind::InvalidArgument, "so_even without discriminant");
  auto V = trace_form(F, cs);
  FieldElement a = (n - 1) % 2 ? -*g.eta : *g.eta;
  auto model = QuadraticSpace::hyperbolic(F, n - 1) + QuadraticSpace::diagonal(F, {a, -(a * *g.delta)});
  return isomorphic(V, model) ? Cocycle::Trivial : Cocycle::Nontrivial;
}

UnitCircleValue eval_quadratic(const FieldElement& chi, const FieldElement& arg) {
  require(!arg.is_zero(), ErrorKind::ZeroValuation, "character evaluated at 0");
  return UnitCircleValue::sign(hilbert_symbol(arg, chi));
}

UnitCircleValue eval_tame(const TameCharacter& mu, const UnitaryBaseData& ub, const EtaleElement& arg) {
  require(!ub.E_tower->base().dyadic(), ErrorKind::WildInputUnsupported, "tame characters need odd residue characteristic");
  FieldElement z = ub.to_tower(arg);
  require(!z.is_zero(), ErrorKind::ZeroValuation, "character evaluated at 0");
  auto dec = decompose(z);
  const auto& k = ub.E_tower->residue_field();
  Rational t = mu.angle * dec.val + Rational(mu.exponent) * Rational(k.log(dec.residue), k.q() - 1);
  return UnitCircleValue(t);
}

bool restriction_matches(const TameCharacter& mu, const UnitaryBaseData& ub, int power) {
  const auto& F = ub.E->base();
  long p = F->base().p;
  long g = F->residue_field().generator();
  FieldElement dE = F->scalar(ub.delta_E);
  for (long val : {p, g}) {
    FieldElement x = F->scalar(Rational(val));
    int s = hilbert_symbol(x, dE);
    int want = (power % 2 != 0) ? s : 1;
    if (eval_tame(mu, ub, ub.E->element(x)) != UnitCircleValue::sign(want)) return false;
  }
  return true;
}

}  // namespace endo
