#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endo/circle.hpp"
#include "endo/etale.hpp"

namespace endo {

enum class GroupCase { Symplectic, SoOdd, SoEven, TwistedGlEven, TwistedGlOdd, Unitary, BcUnitary };

// The nine shapes of the C_i formula (unitary cases split by parity of d).
enum class FormulaCase {
  Symplectic,
  SoOdd,
  SoEven,
  TwistedEven,
  TwistedOdd,
  UnitaryEven,
  UnitaryOdd,
  BcEven,
  BcOdd
};

std::string case_name(GroupCase c);
std::string case_name(FormulaCase c);
// Accepts the names produced by case_name; throws ParseError otherwise.
GroupCase parse_group_case(const std::string& s);

inline bool is_unitary(GroupCase c) { return c == GroupCase::Unitary || c == GroupCase::BcUnitary; }
inline bool is_twisted(GroupCase c) {
  return c == GroupCase::TwistedGlEven || c == GroupCase::TwistedGlOdd || c == GroupCase::BcUnitary;
}

struct GroupDescriptor {
  GroupCase kind = GroupCase::Symplectic;
  int d = 0;
  TowerPtr base;                           // the trivial tower over F
  std::optional<FieldElement> delta;       // so_even: discriminant
  std::optional<UnitaryBaseData> unitary;  // unitary cases: E
  std::optional<FieldElement> nu;          // twisted GL: scalar of the twisting form
  std::optional<FieldElement> eta;         // non-unitary cases
  std::optional<EtaleElement> nu_E;        // bc_unitary
  std::optional<EtaleElement> eta_E;       // unitary cases
};

FormulaCase formula_case(const GroupDescriptor& g);

// Character of E^x trivial on 1-units: pi_E -> exp(2 pi i angle), and on units
// w -> exp(2 pi i exponent * log(w mod pi_E) / (q_E - 1)) with the logarithm
// taken to the fixed generator of the residue field of E.
struct TameCharacter {
  Rational angle = 0;
  long exponent = 0;
};

enum class Cocycle { Trivial, Nontrivial };

struct EndoscopicDatum {
  int d_minus = 0;
  int d_plus = 0;
  std::optional<FieldElement> delta_minus;
  std::optional<FieldElement> delta_plus;
  // twisted_gl_odd: x -> hilbert_symbol(x, chi).
  std::optional<FieldElement> chi;
  std::optional<TameCharacter> mu_minus;
  std::optional<TameCharacter> mu_plus;
  Cocycle cocycle = Cocycle::Trivial;
};

enum class Side { Minus, Plus };

struct IndexParam {
  std::string name;
  Side side = Side::Minus;
  EtalePtr algebra;  // F_i over F_{+-i}
  EtaleElement elem;  // y_i, or x_i for the twisted side of a twisted group
  std::optional<EtaleElement> c;
};

struct RegularParam {
  std::vector<IndexParam> indices;
  std::optional<FieldElement> x_D;     // twisted_gl_odd
  std::optional<FieldElement> d_line;  // so_odd: coefficient of the form on the line D
};

struct Violation {
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string rule, std::string message) {
    violations.push_back({std::move(rule), std::move(message)});
  }
  void merge(const ValidationReport& o) {
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
};

ValidationReport validate_group(const GroupDescriptor& g);
ValidationReport validate_endoscopic(const GroupDescriptor& g, const EndoscopicDatum& e);
// Endoscopic-side parameters y (norm one, side sums, discriminants of the
// orthogonal factors, sign conditions on any supplied c_i).
ValidationReport validate_endoscopic_param(const RegularParam& y, const GroupDescriptor& g,
                                           const EndoscopicDatum& e);
// Group-side parameters x (c_i or twisted x_i, x_D, dimension bookkeeping).
ValidationReport validate_group_param(const RegularParam& x, const GroupDescriptor& g);

// Sufficient regularity test on the endoscopic side: the characteristic
// polynomial of all y_i is squarefree and avoids the roots +-1 as the case needs.
bool check_regularity(const RegularParam& y, const GroupDescriptor& g);

// Throws IndexMismatch when the index sets or algebras differ.
bool match_stable_classes(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                          const EndoscopicDatum& e);

// Canonical text key: c_i forgotten; twisted x_i reduced to x_i / tau(x_i);
// x_D dropped. Sides and names are ignored.
std::string stable_class_of(const RegularParam& p, const GroupDescriptor& g);

// Compare the space (V, q) built from the group-side parameters with the
// quasi-split model fixed by eta. so_odd and so_even only.
std::optional<Cocycle> cocycle_class_of(const RegularParam& x, const GroupDescriptor& g);
// The forced D-line coefficient for so_odd, eta * prod N(-delta_i).
FieldElement forced_d_line(const RegularParam& x, const GroupDescriptor& g);

// Characters.
UnitCircleValue eval_tame(const TameCharacter& mu, const UnitaryBaseData& ub, const EtaleElement& arg);
UnitCircleValue eval_quadratic(const FieldElement& chi, const FieldElement& arg);
// Does mu restricted to F^x equal sgn_{E/F}^power? Tested on p and on a lift of
// a generator of the residue field of F.
bool restriction_matches(const TameCharacter& mu, const UnitaryBaseData& ub, int power);

// N_{F_{+-i}/F}(-delta_i) for an algebra F_{+-i}[s]/(s^2 - delta_i).
FieldElement norm_minus_delta(const QuadraticEtale& alg, const TowerPtr& base);
// (-1)^{n} prod N(-delta_i): the normalized discriminant of a sum of trace
// forms of total dimension 2n.
FieldElement trace_discriminant(const std::vector<const IndexParam*>& indices, const TowerPtr& base);

std::string to_string(Side s);

}  // namespace endo
