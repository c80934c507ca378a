#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endo/params.hpp"
#include "endo/poly.hpp"

namespace endo {

// Characteristic polynomials of the endoscopic parameters over the ground
// (R = Rational for F, R = EtaleElement for E), split by side.
template <class R>
struct CharPolyPack {
  Poly<R> P;
  Poly<R> P_minus;
  Poly<R> P_plus;
  Poly<R> dP;
};

using CharPolyPackF = CharPolyPack<Rational>;
using CharPolyPackE = CharPolyPack<EtaleElement>;

CharPolyPackF build_charpoly_pack(const RegularParam& y);
CharPolyPackE build_charpoly_pack(const RegularParam& y, const UnitaryBaseData& ub);

// C_i as an element of F_i, without the membership check.
EtaleElement compute_C_unchecked(const std::string& index, const RegularParam& y, const RegularParam& x,
                                 const GroupDescriptor& g, const EndoscopicDatum& e);
// C_i in F_{+-i}; NotInFixedField when tau(C_i) != C_i.
FieldElement compute_C(const std::string& index, const RegularParam& y, const RegularParam& x,
                       const GroupDescriptor& g, const EndoscopicDatum& e);

struct IndexTrace {
  std::string name;
  std::string algebra;
  std::string C;
  int verdict = 1;
};

struct PrefactorTrace {
  std::string label;     // which character and argument
  std::string argument;
  UnitCircleValue value;
};

struct FactorTrace {
  std::string formula;  // name of the C_i formula in use
  std::vector<IndexTrace> indices;
  std::vector<PrefactorTrace> prefactors;
  UnitCircleValue result;
};

struct DeltaResult {
  UnitCircleValue value;
  FactorTrace trace;
};

// Delta(y, x) with the product over the field indices of the minus side.
DeltaResult compute_delta(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                          const EndoscopicDatum& e);

// The same quantity with the product running over the field indices of the
// plus side instead. Orthogonal and unitary cases only.
UnitCircleValue swapped_delta(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                              const EndoscopicDatum& e);

// Twisted even case with d^- = d, d^+ = 1: +1 when the symmetrized form of x
// and the trace form of the minus-side coefficients of y are isomorphic,
// -1 otherwise. The minus-side indices of y must carry c.
UnitCircleValue special_case_indicator(const RegularParam& y, const RegularParam& x, const GroupDescriptor& g,
                                       const EndoscopicDatum& e);

// For q^- ~ H^{n-1} + a<1, -delta^->: returns (-1)^{n-1} a, the eta of the
// minus factor. Degenerate when q^- is not of that shape.
FieldElement eta_of_minus_factor(const RegularParam& y, const GroupDescriptor& g, const EndoscopicDatum& e);

UnitCircleValue eval_character(const TameCharacter& mu, const UnitaryBaseData& ub, const EtaleElement& arg);
UnitCircleValue eval_character(const FieldElement& chi, const FieldElement& arg);

}  // namespace endo
