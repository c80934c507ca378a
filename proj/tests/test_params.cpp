#include <doctest.h>

#include <algorithm>

#include "support/instances.hpp"
#include "support/towers.hpp"

using namespace endo;

namespace {

TowerPtr Q(long p) { return Tower::trivial(BaseField::padic(p)); }
FieldElement q(const TowerPtr& t, long n, long d = 1) { return t->scalar(Rational(n, d)); }

bool has_rule(const ValidationReport& r, const std::string& rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

// Discriminant of a monic polynomial through the Sylvester determinant of
// P and P'; nonzero exactly when P is squarefree.
Rational discriminant_by_resultant(const PolyQ& P) {
  PolyQ dP = P.derivative();
  int m = P.degree(), n = dP.degree();
  if (m <= 0) return 1;
  if (n < 0) return 0;
  int size = m + n;
  Matrix<Rational> s(size, std::vector<Rational>(size, Rational(0)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[r][r + k] = P.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = dP.coeff(n - k);
  return determinant(s, Rational(1));
}

}  // namespace

TEST_CASE("group validation") {
  auto F = Q(5);
  GroupDescriptor sp{GroupCase::Symplectic, 3, F};
  sp.eta = q(F, 1);
  CHECK(has_rule(validate_group(sp), "dimension parity"));
  sp.d = 4;
  CHECK(validate_group(sp).ok());

  GroupDescriptor so{GroupCase::SoEven, 2, F};
  so.eta = q(F, 1);
  so.delta = q(F, 1);
  CHECK(has_rule(validate_group(so), "excluded split torus"));
  so.delta = q(F, 5);
  CHECK(validate_group(so).ok());

  GroupDescriptor tw{GroupCase::TwistedGlOdd, 3, F};
  tw.nu = q(F, 1);
  tw.eta = q(F, -1);
  CHECK(validate_group(tw).ok());
  tw.eta = q(F, 2);
  CHECK(has_rule(validate_group(tw), "eta and nu"));

  auto ub = UnitaryBaseData::make(F, Rational(2));
  GroupDescriptor u{GroupCase::Unitary, 2, F};
  u.unitary = ub;
  u.eta_E = ub.E->element(q(F, 3));
  CHECK(has_rule(validate_group(u), "eta parity"));
  u.eta_E = ub.E->sqrt_delta();
  CHECK(validate_group(u).ok());
  u.d = 3;
  CHECK(has_rule(validate_group(u), "eta parity"));
}

TEST_CASE("endoscopic validation") {
  auto F = Q(5);
  GroupDescriptor sp{GroupCase::Symplectic, 4, F};
  sp.eta = q(F, 1);
  EndoscopicDatum e;
  e.d_minus = 2;
  e.d_plus = 2;
  e.delta_minus = q(F, 5);
  CHECK(validate_endoscopic(sp, e).ok());
  e.delta_minus = q(F, 1);
  CHECK(has_rule(validate_endoscopic(sp, e), "ellipticity"));
  e.delta_minus = q(F, 5);
  e.d_plus = 4;
  CHECK(has_rule(validate_endoscopic(sp, e), "endoscopic dimensions"));

  GroupDescriptor so{GroupCase::SoOdd, 3, F};
  so.eta = q(F, 1);
  EndoscopicDatum f;
  f.d_minus = 1;
  f.d_plus = 3;
  CHECK(validate_endoscopic(so, f).ok());
  f.d_plus = 2;
  CHECK(!validate_endoscopic(so, f).ok());

  GroupDescriptor se{GroupCase::SoEven, 4, F};
  se.eta = q(F, 1);
  se.delta = q(F, 2);
  EndoscopicDatum h;
  h.d_minus = 2;
  h.d_plus = 2;
  h.delta_minus = q(F, 5);
  h.delta_plus = q(F, 10);
  CHECK(validate_endoscopic(se, h).ok());
  h.delta_plus = q(F, 2);
  CHECK(has_rule(validate_endoscopic(se, h), "discriminant product"));
}

TEST_CASE("character restriction") {
  auto F = Q(5);
  for (Rational dE : {Rational(2), Rational(5), Rational(10)}) {
    auto ub = UnitaryBaseData::make(F, dE);
    CHECK(restriction_matches(TameCharacter{}, ub, 0));
    CHECK(restriction_matches(TameCharacter{}, ub, 2));
    // sgn_{E/F} itself is not trivial on F^x.
    CHECK(!restriction_matches(TameCharacter{}, ub, 1));
  }
  // Unramified E: the character with angle 1/2 on p and trivial on units
  // restricts to sgn_{E/F}, which is -1 on p and trivial on units.
  auto ub = UnitaryBaseData::make(F, Rational(2));
  CHECK(restriction_matches(TameCharacter{Rational(1, 2), 0}, ub, 1));

  GroupDescriptor u{GroupCase::Unitary, 3, F};
  u.unitary = ub;
  u.eta_E = ub.E->element(q(F, 1));
  EndoscopicDatum e;
  e.d_minus = 2;
  e.d_plus = 1;
  e.mu_minus = TameCharacter{Rational(1, 2), 0};
  e.mu_plus = TameCharacter{};
  CHECK(validate_endoscopic(u, e).ok());
  e.mu_minus = TameCharacter{};
  CHECK(has_rule(validate_endoscopic(u, e), "character restriction"));
}

TEST_CASE("character evaluation") {
  auto F = Q(5);
  auto ub = UnitaryBaseData::make(F, Rational(2));
  auto pi_E = ub.from_tower(ub.E_tower->uniformizer());
  std::mt19937 rng(5);
  auto z = testing::random_invertible(ub.E, rng);
  CHECK(eval_character(TameCharacter{}, ub, z) == UnitCircleValue());
  TameCharacter mu{Rational(1, 4), 0};
  CHECK(eval_character(mu, ub, pi_E * pi_E).angle() == Rational(1, 2));
  TameCharacter nu{Rational(1, 3), 5};
  for (int k = 0; k < 20; ++k) {
    auto a = testing::random_invertible(ub.E, rng), b = testing::random_invertible(ub.E, rng);
    CHECK(eval_character(nu, ub, a * b) == eval_character(nu, ub, a) * eval_character(nu, ub, b));
  }
  for (long a : {2L, 3L, 5L, 10L}) {
    auto chi = q(F, a);
    for (long x : {1L, 2L, 5L, -1L, 15L})
      CHECK(eval_character(chi, q(F, x)) == UnitCircleValue::sign(hilbert_symbol(q(F, x), chi)));
  }
}

TEST_CASE("regularity") {
  auto F = Q(5);
  auto alg = QuadraticEtale::field(q(F, 2));
  auto z = alg->element(q(F, 1), q(F, 1));
  auto y = z / z.tau();
  REQUIRE(y.norm() == F->one());
  GroupDescriptor sp{GroupCase::Symplectic, 4, F};
  sp.eta = q(F, 1);
  RegularParam p;
  p.indices.push_back({"a", Side::Minus, alg, y, std::nullopt});
  p.indices.push_back({"b", Side::Plus, alg, y, std::nullopt});
  CHECK(!check_regularity(p, sp));
  p.indices[1].elem = y * y;
  CHECK(check_regularity(p, sp));

  GroupDescriptor so{GroupCase::SoEven, 4, F};
  so.eta = q(F, 1);
  so.delta = q(F, 1);
  auto S = QuadraticEtale::split(F);
  RegularParam r;
  r.indices.push_back({"a", Side::Minus, alg, y, std::nullopt});
  r.indices.push_back({"b", Side::Plus, S, S->from_pair(q(F, -1), q(F, -1)), std::nullopt});
  CHECK(!check_regularity(r, so));
  r.indices[1].elem = S->from_pair(q(F, 3), q(F, 1, 3));
  CHECK(check_regularity(r, so));

  // Random instances: the gate agrees with a Sylvester-discriminant oracle.
  std::mt19937 rng(11);
  for (int k = 0; k < 40; ++k) {
    auto in = testing::random_instance(GroupCase::Symplectic, rng);
    auto& idx = in.y.indices;
    if (k % 2 && idx.size() >= 2 && idx[0].algebra == idx[1].algebra) idx[1].elem = idx[0].elem;
    PolyQ P(Rational(1));
    for (const auto& ip : idx) P = P * charpoly_over_base(ip.elem);
    bool oracle = discriminant_by_resultant(P) != 0 && P.eval(Rational(-1)) != 0;
    CHECK(check_regularity(in.y, in.g) == oracle);
  }
}

TEST_CASE("matching and stable classes") {
  std::mt19937 rng(21);
  for (auto gc : {GroupCase::Symplectic, GroupCase::SoOdd, GroupCase::Unitary}) {
    auto in = testing::random_instance(gc, rng);
    CHECK(match_stable_classes(in.y, in.x, in.g, in.e));
    auto other = in.x;
    for (auto& ip : other.indices) ip.c = *ip.c * ip.algebra->scalar(7);
    CHECK(stable_class_of(other, in.g) == stable_class_of(in.x, in.g));
    auto squared = in.y;
    squared.indices[0].elem = squared.indices[0].elem * squared.indices[0].elem;
    CHECK(!match_stable_classes(squared, in.x, in.g, in.e));
    CHECK(stable_class_of(squared, in.g) != stable_class_of(in.y, in.g));
  }
  for (auto gc : {GroupCase::TwistedGlEven, GroupCase::TwistedGlOdd, GroupCase::BcUnitary}) {
    auto in = testing::random_instance(gc, rng);
    CHECK(match_stable_classes(in.y, in.x, in.g, in.e));
    auto scaled = in.x;
    for (auto& ip : scaled.indices) ip.elem = ip.elem * ip.algebra->element(testing::random_unit(ip.algebra->base(), rng));
    CHECK(match_stable_classes(in.y, scaled, in.g, in.e));
    CHECK(stable_class_of(scaled, in.g) == stable_class_of(in.x, in.g));
    auto squared = in.y;
    squared.indices[0].elem = squared.indices[0].elem * squared.indices[0].elem;
    CHECK(!match_stable_classes(squared, in.x, in.g, in.e));
  }
  auto in = testing::random_instance(GroupCase::Symplectic, rng);
  auto fewer = in.x;
  fewer.indices[0].name = "renamed";
  CHECK_THROWS_AS(match_stable_classes(in.y, fewer, in.g, in.e), Error);
}

TEST_CASE("group-side validation") {
  std::mt19937 rng(31);
  auto in = testing::random_instance(GroupCase::SoOdd, rng);
  CHECK(validate_group_param(in.x, in.g).ok());
  auto bad = in.x;
  auto F = in.g.base;
  bad.d_line = *bad.d_line * q(F, testing::first_nonresidue(5));
  CHECK(has_rule(validate_group_param(bad, in.g), "line coefficient"));
  auto nc = in.x;
  nc.indices[0].c.reset();
  CHECK(has_rule(validate_group_param(nc, in.g), "coefficient"));

  auto sp = testing::random_instance(GroupCase::Symplectic, rng);
  auto flipped = sp.x;
  flipped.indices[0].c = flipped.indices[0].algebra->scalar(1);
  CHECK(has_rule(validate_group_param(flipped, sp.g), "coefficient symmetry"));
  auto y = sp.y;
  y.indices[0].elem = y.indices[0].elem * y.indices[0].algebra->scalar(2);
  CHECK(has_rule(validate_endoscopic_param(y, sp.g, sp.e), "norm one"));
}

TEST_CASE("random instances validate in every case") {
  std::mt19937 rng(41);
  for (auto gc : {GroupCase::Symplectic, GroupCase::SoOdd, GroupCase::SoEven, GroupCase::TwistedGlEven,
                  GroupCase::TwistedGlOdd, GroupCase::Unitary, GroupCase::BcUnitary})
    for (long p : {3L, 5L, 7L}) {
      testing::GenOptions opt;
      opt.p = p;
      auto in = testing::random_instance(gc, rng, opt);
      CHECK(testing::validate_all(in).ok());
      CHECK(check_regularity(in.y, in.g));
    }
}
