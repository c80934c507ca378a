#include <doctest.h>

#include <random>

#include "endo/forms.hpp"
#include "support/towers.hpp"

using namespace endo;

namespace {
FieldElement q(const TowerPtr& t, long n, long d = 1) { return t->scalar(Rational(n, d)); }

Matrix<FieldElement> random_invertible(const TowerPtr& t, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4);
  while (true) {
    Matrix<FieldElement> m(n, std::vector<FieldElement>(n, t->zero()));
    for (auto& row : m)
      for (auto& x : row) x = q(t, coef(rng));
    if (!determinant(m, t->one()).is_zero()) return m;
  }
}
}  // namespace

TEST_CASE("trace forms") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto line = trace_form(t, {}, q(t, 1));
  CHECK(line.dim() == 1);
  CHECK(line.gram()[0][0] == t->one());

  auto S = QuadraticEtale::split(t);
  auto hyp = trace_form(t, {S->from_pair(q(t, 1), q(t, 1))});
  auto inv = invariants(hyp);
  CHECK(inv.dim == 2);
  CHECK(inv.discriminant->trivial());
  CHECK(isomorphic(hyp, QuadraticSpace::hyperbolic(t, 1)));

  auto F = QuadraticEtale::field(q(t, 5));
  auto tf = trace_form(t, {F->scalar(1)});
  CHECK(tf.gram()[0][0] == q(t, 2));
  CHECK(tf.gram()[1][1] == q(t, -10));
  CHECK(tf.gram()[0][1].is_zero());
  CHECK(invariants(tf).det_class == square_class(q(t, -5)));

  CHECK_THROWS_AS(trace_form(t, {F->sqrt_delta()}), Error);
}

TEST_CASE("invariants of small diagonal forms") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto a = invariants(QuadraticSpace::diagonal(t, {q(t, 1), q(t, 1)}));
  CHECK(a.hasse == 1);
  CHECK(a.det_class.trivial());
  auto b = invariants(QuadraticSpace::diagonal(t, {q(t, 1), q(t, -1)}));
  CHECK(b.discriminant->trivial());
  auto c = invariants(QuadraticSpace::diagonal(t, {q(t, 5), q(t, 5)}));
  CHECK(c.hasse == 1);
  CHECK(invariants(QuadraticSpace::zero_space(t)).discriminant->trivial());
}

TEST_CASE("isomorphism of binary forms with ramified discriminant") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto u = q(t, 2), d = q(t, 5);
  auto x = QuadraticSpace::diagonal(t, {t->one(), -d});
  auto y = QuadraticSpace::diagonal(t, {u, -(u * d)});
  // Hasse invariants straight from the diagonal entries.
  int hx = hilbert_symbol(t->one(), -d);
  int hy = hilbert_symbol(u, -(u * d));
  bool same_det = square_class(-d) == square_class(-(u * u * d));
  CHECK(isomorphic(x, y) == (same_det && hx == hy));
  CHECK(!isomorphic(x, y));
  CHECK(isomorphic(x, x));
}

TEST_CASE("isomorphism over R uses signatures") {
  auto R = Tower::trivial(BaseField::real());
  CHECK(!isomorphic(QuadraticSpace::diagonal(R, {q(R, 1), q(R, 1)}), QuadraticSpace::diagonal(R, {q(R, 1), q(R, -1)})));
  CHECK(isomorphic(QuadraticSpace::diagonal(R, {q(R, 3), q(R, -1)}), QuadraticSpace::hyperbolic(R, 1)));
}

TEST_CASE("invariants are congruence invariant") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-12, 12);
  for (long p : {3L, 5L, 2L}) {
    auto t = Tower::trivial(BaseField::padic(p));
    for (int trial = 0; trial < 15; ++trial) {
      int n = 1 + trial % 4;
      std::vector<FieldElement> diag;
      for (int i = 0; i < n; ++i) {
        int v = 0;
        while (v == 0) v = coef(rng);
        diag.push_back(q(t, v));
      }
      auto space = QuadraticSpace::diagonal(t, diag);
      auto moved = space.congruent(random_invertible(t, n, rng));
      auto a = invariants(space), b = invariants(moved);
      CHECK(a.det_class == b.det_class);
      CHECK(a.hasse == b.hasse);
      CHECK(isomorphic(space, moved));
      auto h = QuadraticSpace::hyperbolic(t, 1);
      auto other = QuadraticSpace::diagonal(t, std::vector<FieldElement>(n, t->one()));
      CHECK(isomorphic(space + h, other + h) == isomorphic(space, other));
    }
  }
}

TEST_CASE("symmetrized twisted forms") {
  auto t = Tower::trivial(BaseField::padic(5));
  auto S = QuadraticEtale::split(t);
  auto sym = symmetrize_twisted(t, {S->from_pair(q(t, 1), q(t, 1))});
  CHECK(isomorphic(sym, QuadraticSpace::hyperbolic(t, 1).scaled(q(t, 2))));

  auto ram = testing::quadratic_menu(BaseField::padic(5))[2];
  auto F = QuadraticEtale::field(ram->scalar(Rational(2)));
  auto c = F->element(ram->gen_pi() + ram->scalar(3));
  auto twice = trace_form(t, {c}).scaled(q(t, 2));
  auto s = symmetrize_twisted(t, {c});
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) CHECK(s.gram()[i][j] == twice.gram()[i][j]);

  // x not fixed: the symmetrization only sees x + tau(x).
  auto x = F->element(ram->scalar(3), ram->gen_pi());
  auto sx = symmetrize_twisted(t, {x});
  auto tx = trace_form(t, {F->element(x.trace())});
  CHECK(isomorphic(sx, tx));
  CHECK_THROWS_AS(symmetrize_twisted(t, {F->sqrt_delta()}), Error);
}
