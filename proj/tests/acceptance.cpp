// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N]...
//
// Exit status is 0 when the set of failing criteria equals the expected set.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "endo/cli.hpp"
#include "endo/document.hpp"
#include "endo/forms.hpp"
#include "support/instances.hpp"
#include "support/towers.hpp"

using namespace endo;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  long total = 0;
  long good = 0;
  std::string first_bad;
  void add(bool ok, const std::string& what = "") {
    ++total;
    if (ok) {
      ++good;
    } else if (first_bad.empty()) {
      first_bad = what;
    }
  }
  Outcome outcome(const std::string& noun) const {
    std::ostringstream os;
    os << good << "/" << total << " " << noun;
    if (!first_bad.empty()) os << "; first failure: " << first_bad;
    return {good == total && total > 0, os.str()};
  }
};

const std::vector<FormulaCase> kFormulaCases{
    FormulaCase::Symplectic,  FormulaCase::SoOdd,      FormulaCase::SoEven, FormulaCase::TwistedEven, FormulaCase::TwistedOdd,
    FormulaCase::UnitaryEven, FormulaCase::UnitaryOdd, FormulaCase::BcEven, FormulaCase::BcOdd};

const std::vector<GroupCase> kGroupCases{GroupCase::Symplectic,    GroupCase::SoOdd,        GroupCase::SoEven,
                                         GroupCase::TwistedGlEven, GroupCase::TwistedGlOdd, GroupCase::Unitary,
                                         GroupCase::BcUnitary};

// Every supported tower with e*f <= 2 over the listed odd primes, and Q_2.
std::vector<TowerPtr> small_towers() {
  std::vector<TowerPtr> out;
  for (long p : {3L, 5L, 7L, 13L})
    for (const auto& t : testing::quadratic_menu(BaseField::padic(p))) out.push_back(t);
  out.push_back(Tower::trivial(BaseField::padic(2)));
  return out;
}

std::string describe_tower(const Tower& t) {
  std::ostringstream os;
  os << "p=" << t.p() << " e=" << t.e() << " f=" << t.f();
  return os.str();
}

Outcome oracle_equivalence() {
  Tally tally;
  for (const auto& t : small_towers()) {
    auto classes = square_classes(t);
    for (const auto& dc : classes) {
      if (dc.trivial()) continue;
      auto delta = class_representative(t, dc);
      int depth = valuation(delta * Rational(4)) + 1;
      for (const auto& cc : classes) {
        auto c = class_representative(t, cc);
        tally.add(norm_test(c, delta) == brute_force_norm_oracle(c, delta, depth),
                  describe_tower(*t) + " c=" + to_string(c) + " delta=" + to_string(delta));
      }
    }
  }
  return tally.outcome("square-class pairs agree");
}

Outcome hilbert_axioms() {
  Tally tally;
  auto towers = small_towers();
  towers.push_back(Tower::trivial(BaseField::real()));
  for (const auto& t : towers) {
    std::vector<FieldElement> reps;
    for (const auto& c : square_classes(t)) reps.push_back(class_representative(t, c));
    std::string where = describe_tower(*t);
    if (t->base().is_real()) where = "R";
    for (const auto& a : reps) {
      tally.add(hilbert_symbol(a, -a) == 1, where + " (a,-a) a=" + to_string(a));
      auto one_minus = t->one() - a;
      if (!one_minus.is_zero()) tally.add(hilbert_symbol(a, one_minus) == 1, where + " (a,1-a) a=" + to_string(a));
      for (const auto& b : reps) {
        tally.add(hilbert_symbol(a, b) == hilbert_symbol(b, a), where + " symmetry");
        for (const auto& c : reps)
          tally.add(hilbert_symbol(a * c, b) == hilbert_symbol(a, b) * hilbert_symbol(c, b),
                    where + " bimultiplicativity a=" + to_string(a) + " c=" + to_string(c) + " b=" + to_string(b));
      }
    }
  }
  return tally.outcome("axiom instances hold");
}

Outcome C_well_defined() {
  Tally tally;
  std::mt19937 rng(101);
  for (auto fc : kFormulaCases)
    for (int k = 0; k < 100; ++k) {
      auto in = testing::random_instance(fc, rng);
      for (const auto& ip : in.y.indices) {
        auto C = compute_C_unchecked(ip.name, in.y, in.x, in.g, in.e);
        tally.add(C.fixed() && !C.is_zero(), case_name(fc) + " index " + ip.name);
      }
    }
  return tally.outcome("C values fixed and nonzero over 900 instances");
}

Outcome norm_class_invariance() {
  Tally tally;
  std::mt19937 rng(102);
  for (auto fc : kFormulaCases)
    for (int k = 0; k < 50; ++k) {
      auto in = testing::random_instance(fc, rng);
      auto before = compute_delta(in.y, in.x, in.g, in.e).value;
      auto moved = in.x;
      bool twisted = is_twisted(in.g.kind);
      for (auto& ip : moved.indices) {
        auto m = ip.algebra->element(testing::random_invertible(ip.algebra, rng).norm());
        if (ip.c) ip.c = *ip.c * m;
        if (twisted) ip.elem = ip.elem * m;
      }
      if (moved.x_D) {
        auto s = testing::random_unit(in.g.base, rng);
        moved.x_D = *moved.x_D * s * s;
      }
      tally.add(compute_delta(in.y, moved, in.g, in.e).value == before, case_name(fc));
    }
  return tally.outcome("instances unchanged");
}

Outcome identity_suite() {
  Tally tally;
  std::mt19937 rng(103);
  for (int k = 0; k < 100; ++k) {
    testing::GenOptions opt;
    opt.p = k % 2 ? 5 : 3;
    auto d = testing::random_twisted_odd_data(rng, opt);
    bool ok = true;
    std::string failed;
    auto need = [&](bool v, const std::string& what) {
      if (!v && ok) failed = what;
      ok = ok && v;
    };
    for (const auto& ip : d.y.indices) {
      if ((ip.elem + ip.algebra->scalar(1)).norm().is_zero()) continue;
      auto X = cayley(ip.elem);
      need(cayley_inv(X) == ip.elem, "cayley round trip of y");
      need(cayley(cayley_inv(X)) == X, "cayley round trip of X");
    }
    auto minus_field = [](const IndexParam& ip) { return ip.side == Side::Minus && ip.algebra->is_field(); };
    auto plus_field = [](const IndexParam& ip) { return ip.side == Side::Plus && ip.algebra->is_field(); };
    for (const auto& i : d.y.indices) {
      need(li_identity_2(i.name, d), "li_identity_2");
      if (minus_field(i)) need(check_Bi_Ci_consistency(i.name, d), "check_Bi_Ci_consistency");
      for (const auto& j : d.y.indices) {
        if (i.name == j.name) continue;
        need(li_identity_1(i.name, j.name, d), "li_identity_1");
        if (minus_field(i) && plus_field(j)) need(check_Aij_is_norm(i.name, j.name, d), "check_Aij_is_norm");
      }
    }
    need(check_cD_square_class(d), "check_cD_square_class");
    tally.add(ok, "instance " + std::to_string(k) + ": " + failed);
  }
  return tally.outcome("twisted odd instances pass every identity");
}

Outcome trace_form_determinant() {
  Tally tally;
  std::mt19937 rng(104);
  for (long p : {3L, 5L, 7L, 13L})
    for (const auto& t : testing::quadratic_menu(BaseField::padic(p))) {
      for (const auto& dc : square_classes(t)) {
        if (dc.trivial()) continue;
        auto alg = QuadraticEtale::field(class_representative(t, dc) * testing::random_unit(t, rng).pow(2));
        for (int k = 0; k < 5; ++k) {
          auto c = alg->element(testing::random_unit(t, rng));
          Rational det = determinant(trace_bilinear(c), Rational(1));
          auto F = Tower::trivial(t->base());
          Rational expected = norm_to_base(-alg->delta());
          tally.add(is_square(F->scalar(det / expected)), describe_tower(*t) + " delta=" + to_string(alg->delta()));
        }
      }
    }
  return tally.outcome("Gram determinants match the norm of -delta");
}

Outcome special_case() {
  Tally tally;
  std::mt19937 rng(105);
  const long primes[] = {3, 5, 7, 11, 13};
  for (int k = 0; k < 50; ++k) {
    long p = primes[k % 5];
    auto in = testing::random_special_case(rng, p);
    auto ind = special_case_indicator(in.y, in.x, in.g, in.e);
    auto delta = compute_delta(in.y, in.x, in.g, in.e).value;
    tally.add(ind == delta, "p=" + std::to_string(p) + " indicator " + ind.render() + " vs delta " + delta.render());
  }
  return tally.outcome("instances where the indicator equals delta");
}

Outcome so_odd_swap() {
  Tally tally;
  std::mt19937 rng(106);
  int trivial = 0, nontrivial = 0;
  for (int k = 0; k < 100; ++k) {
    auto in = testing::random_instance(GroupCase::SoOdd, rng);
    auto a = compute_delta(in.y, in.x, in.g, in.e).value;
    auto b = swapped_delta(in.y, in.x, in.g, in.e);
    bool flip = in.e.cocycle == Cocycle::Nontrivial;
    (flip ? nontrivial : trivial)++;
    tally.add(flip ? a == b * UnitCircleValue::sign(-1) : a == b, flip ? "nontrivial cocycle" : "trivial cocycle");
  }
  auto out = tally.outcome("so_odd instances (" + std::to_string(trivial) + " trivial, " + std::to_string(nontrivial) +
                           " nontrivial cocycle)");
  if (trivial == 0 || nontrivial == 0) out.pass = false;
  return out;
}

Outcome trivial_cases() {
  Tally tally;
  std::mt19937 rng(107);
  testing::GenOptions plus;
  plus.all_plus = true;
  for (auto gc : {GroupCase::Symplectic, GroupCase::SoOdd, GroupCase::SoEven, GroupCase::TwistedGlEven,
                  GroupCase::TwistedGlOdd})
    for (int k = 0; k < 10; ++k) {
      auto in = testing::random_instance(gc, rng, plus);
      if (in.e.chi) in.e.chi = in.g.base->one();  // trivial prefactor
      tally.add(compute_delta(in.y, in.x, in.g, in.e).value == UnitCircleValue(), "empty minus side, " + case_name(gc));
    }
  testing::GenOptions split;
  split.split_minus = true;
  for (auto gc : {GroupCase::Symplectic, GroupCase::SoOdd, GroupCase::SoEven, GroupCase::TwistedGlEven})
    for (int k = 0; k < 10; ++k) {
      auto in = testing::random_instance(gc, rng, split);
      tally.add(compute_delta(in.y, in.x, in.g, in.e).value == UnitCircleValue(), "split minus side, " + case_name(gc));
    }

  // Over R with F_i = C: y = (1+2i)/(1-2i), c = i. By hand,
  // C = -c(2y - t)(2 + t) with t = Tr y = -6/5 gives C = 32/25 > 0.
  auto R = Tower::trivial(BaseField::real());
  auto Cx = QuadraticEtale::field(R->scalar(-1));
  auto z = Cx->element(R->scalar(1), R->scalar(2));
  GroupDescriptor g{GroupCase::Symplectic, 2, R};
  g.eta = R->scalar(1);
  EndoscopicDatum e;
  e.d_minus = 2;
  e.delta_minus = R->scalar(-1);
  RegularParam yp, xp;
  yp.indices.push_back({"i", Side::Minus, Cx, z / z.tau(), std::nullopt});
  xp.indices.push_back({"i", Side::Minus, Cx, z / z.tau(), Cx->sqrt_delta()});
  tally.add(testing::validate_all({g, e, yp, xp}).ok(), "real instance validates");
  tally.add(compute_C("i", yp, xp, g, e) == R->scalar(Rational(32, 25)), "real C by hand");
  tally.add(compute_delta(yp, xp, g, e).value == UnitCircleValue::sign(1), "real delta +1");
  xp.indices[0].c = -Cx->sqrt_delta();
  tally.add(compute_delta(yp, xp, g, e).value == UnitCircleValue::sign(-1), "real delta -1 after c -> -c");
  for (long n : {-7L, -1L, 1L, 3L}) tally.add(sgn_value(R->scalar(n), *Cx) == (n > 0 ? 1 : -1), "sgn is the sign");
  return tally.outcome("trivial-case checks");
}

// Instance -> document, naming every tower other than the base.
InstanceDocument to_document(const testing::Instance& in) {
  InstanceDocument d{in.g, in.e, in.y, in.x, {}};
  d.towers["F"] = in.g.base;
  int n = 0;
  for (const auto& ip : in.y.indices) {
    const auto& t = ip.algebra->base();
    bool known = false;
    for (const auto& [name, tw] : d.towers) known = known || tw == t;
    if (!known) d.towers["t" + std::to_string(n++)] = t;
  }
  return d;
}

Outcome determinism() {
  Tally tally;
  std::mt19937 rng(108);
  CliOptions opt;
  opt.trace = true;
  for (auto gc : kGroupCases)
    for (int k = 0; k < 5; ++k) {
      std::string text = serialize_document(to_document(testing::random_instance(gc, rng)));
      auto a = cmd_compute_text(text, opt);
      auto b = cmd_compute_text(text, opt);
      tally.add(a.exit_code == kExitOk && a.output == b.output && a.output.find("trace:") != std::string::npos,
                case_name(gc) + " exit " + std::to_string(a.exit_code) + ": " + a.output);
    }
  return tally.outcome("documents computed twice with identical traced output");
}

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--expect-fail") == 0 && a + 1 < argc) {
      expected_failures.insert(std::atoi(argv[++a]));
    } else {
      std::cerr << "usage: acceptance [--expect-fail N]...\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "Hilbert-symbol oracle equivalence", oracle_equivalence},
      {2, "Hilbert-symbol axioms", hilbert_axioms},
      {3, "C well-definedness", C_well_defined},
      {4, "norm-class invariance of delta", norm_class_invariance},
      {5, "exact identity suite", identity_suite},
      {6, "trace-form determinant identity", trace_form_determinant},
      {7, "special case: indicator equals delta", special_case},
      {8, "so_odd swap behavior", so_odd_swap},
      {9, "trivial-case suite", trivial_cases},
      {10, "determinism of compute", determinism},
  };
  const double budget[] = {0, 60, 0, 0, 0, 120, 0, 0, 0, 0, 0};

  std::set<int> failures;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget[c.id] > 0 && secs > budget[c.id]) {
      out.pass = false;
      out.detail += "; over the time budget";
    }
    if (!out.pass) failures.insert(c.id);
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << secs;
    std::cout << (out.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": " << out.detail << " ("
              << t.str() << " s)" << (!out.pass && expected_failures.count(c.id) ? " [known failure]" : "") << "\n"
              << std::flush;
  }
  std::cout << criteria.size() - failures.size() << "/" << criteria.size() << " criteria pass\n";
  if (failures != expected_failures) {
    for (int id : expected_failures)
      if (!failures.count(id)) std::cout << "criterion " << id << " was expected to fail and passed\n";
    return 1;
  }
  return 0;
}
