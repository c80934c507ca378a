#include <doctest.h>

#include <random>

#include "endo/etale.hpp"
#include "support/towers.hpp"

using namespace endo;

namespace {
FieldElement q(const TowerPtr& t, long n, long d = 1) { return t->scalar(Rational(n, d)); }
}  // namespace

TEST_CASE("tau, norm and trace") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto F = QuadraticEtale::field(q(t, 5));
  auto x = F->element(q(t, 3), q(t, 2));
  CHECK(x.tau() == F->element(q(t, 3), q(t, -2)));
  CHECK(x.tau().tau() == x);
  CHECK(x.norm() == q(t, 9 - 5 * 4));
  CHECK(x.trace() == q(t, 6));

  auto S = QuadraticEtale::split(t);
  auto y = S->from_pair(q(t, 4), q(t, 7));
  auto [a, b] = y.tau().pair();
  CHECK(a == q(t, 7));
  CHECK(b == q(t, 4));
  CHECK(y.norm() == q(t, 28));
  CHECK(y.trace() == q(t, 11));

  auto z = x / x.tau();
  CHECK(z.norm() == t->one());
}

TEST_CASE("characteristic polynomials over the base") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto F = QuadraticEtale::field(q(t, 5));
  auto x = F->element(q(t, 3), q(t, 2));
  CHECK(charpoly_over_base(x) == PolyQ(std::vector<Rational>{Rational(9 - 20), Rational(-6), Rational(1)}));

  auto S = QuadraticEtale::split(t);
  auto y = S->from_pair(q(t, 3), q(t, 1, 3));
  CHECK(charpoly_over_base(y) == PolyQ(std::vector<Rational>{1, Rational(-10, 3), 1}));

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (const auto& tw : testing::quadratic_menu(BaseField::padic(7))) {
    auto alg = QuadraticEtale::make(tw->lift_residue(tw->residue_field().first_nonsquare()));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> ca, cb;
      for (int i = 0; i < tw->degree(); ++i) {
        ca.push_back(coef(rng));
        cb.push_back(coef(rng));
      }
      auto w = alg->element(FieldElement(tw, ca), FieldElement(tw, cb));
      auto P = charpoly_over_base(w);
      CHECK(P.degree() == 2 * tw->degree());
      auto at = P.eval(w, [&](const Rational& c) { return alg->scalar(c); });
      CHECK(at.is_zero());
      CHECK(P.coeff(0) == norm_to_base(w) * (P.degree() % 2 ? -1 : 1));
    }
  }
}

TEST_CASE("sign character") {
  auto t = Tower::trivial(BaseField::padic(5));
  CHECK(sgn_value(q(t, 2), *QuadraticEtale::split(t)) == 1);
  CHECK(sgn_value(q(t, 2), *QuadraticEtale::field(q(t, 5))) == -1);
  auto R = Tower::trivial(BaseField::real());
  auto C = QuadraticEtale::field(q(R, -1));
  CHECK(sgn_value(q(R, -2), *C) == -1);
  CHECK(sgn_value(q(R, 3), *C) == 1);
  auto F = QuadraticEtale::field(q(t, 10));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-20, 20);
  for (int k = 0; k < 20; ++k) {
    auto w = F->element(q(t, coef(rng)), q(t, coef(rng)));
    if (w.is_zero()) continue;
    CHECK(sgn_value(w.norm(), *F) == 1);
  }
}

TEST_CASE("E-structure of the unitary tensor products") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto ub = UnitaryBaseData::make(t, Rational(2));
  auto towers = testing::quadratic_menu(BaseField::padic(5));
  // E = Q_5(sqrt 2) is the unramified quadratic extension: it embeds in the
  // unramified tower only.
  CHECK(ub.tensor(towers[0])->is_field());
  CHECK(!ub.tensor(towers[1])->is_field());
  CHECK(ub.tensor(towers[2])->is_field());

  auto Fi = ub.tensor(towers[2]);
  auto y = Fi->element(towers[2]->gen_pi() + towers[2]->one(), towers[2]->one());
  auto P = charpoly_over_E(y, ub);
  CHECK(P.degree() == 2);
  auto at = P.eval(y, [&](const EtaleElement& c) { return ub.embed(c, Fi); });
  CHECK(at.is_zero());
  // Product with its conjugate is the charpoly over F.
  std::vector<EtaleElement> conj;
  for (const auto& c : P.coeffs()) conj.push_back(c.tau());
  auto full = P * Poly<EtaleElement>(conj);
  auto overF = charpoly_over_base(y);
  for (int k = 0; k <= overF.degree(); ++k) CHECK(full.coeff(k) == ub.E->scalar(overF.coeff(k)));

  auto e = ub.E->element(q(t, 3), q(t, 1));
  auto z = ub.to_tower(e);
  CHECK(ub.from_tower(z) == e);
  CHECK(z * z == ub.to_tower(e * e));
  CHECK_THROWS_AS(UnitaryBaseData::make(t, Rational(4)), Error);
  CHECK_THROWS_AS(UnitaryBaseData::make(Tower::trivial(BaseField::real()), Rational(-1)), Error);
}
