#pragma once

#include <string>
#include <vector>

#include "endo/factor.hpp"
#include "endo/forms.hpp"
#include "endo/poly.hpp"

namespace endo {

// X = (y - 1)(1 + y)^{-1}; PoleAtMinusOne when 1 + y is not invertible.
EtaleElement cayley(const EtaleElement& y);
// y = (1 + X)(1 - X)^{-1}; PoleAtOne when 1 - X is not invertible.
EtaleElement cayley_inv(const EtaleElement& X);

// Lie-algebra parameter: one X_i per index, tau(X_i) = -X_i.
struct LieParam {
  std::vector<EtaleElement> X;
};

LieParam lie_param(const RegularParam& y);
// Characteristic polynomial over F of X on D + sum F_i (X acts by 0 on D).
PolyQ lie_charpoly(const LieParam& X);

// The twisting form: e_k . e_l = nu (-1)^k when k + l = d + 1.
QuadraticSpace twisting_form(const TowerPtr& base, int d, const FieldElement& nu);

// Auxiliary presentation c_D w_D w'_D + sum Tr(tau(w_i) w'_i c_i) of the
// twisting form, with c_i in the fixed field of index i.
struct Auxiliary {
  std::vector<FieldElement> c;
  FieldElement c_D;
};

// Deterministic search over square-class representatives; Degenerate if none fits.
Auxiliary auxiliary_presentation(const RegularParam& x, const GroupDescriptor& g);
bool presents_twisting_form(const Auxiliary& aux, const RegularParam& x, const GroupDescriptor& g);

struct TwistedOddData {
  GroupDescriptor g;
  EndoscopicDatum e;
  RegularParam y;
  RegularParam x;
  Auxiliary aux;
  LieParam lie;  // X_i, Cayley partners of y_i unless overridden
};

// Requires twisted_gl_odd; builds the Cayley partners.
TwistedOddData make_twisted_odd_data(const GroupDescriptor& g, const EndoscopicDatum& e, const RegularParam& y,
                                     const RegularParam& x, const Auxiliary& aux);

UnitCircleValue delta_I_lie(const TwistedOddData& data, const FieldElement& eta);

// P_j(y_i) = (1 - X_i)^{-[F_j:F]} P_j(-1) Q_j(X_i).
bool li_identity_1(const std::string& i, const std::string& j, const TwistedOddData& data);
// 2 (1 - X_i)^{d-2} P_y'(y_i) = -P_y(-1) Q_X'(X_i), P_y(T) = (T - 1) P(T).
bool li_identity_2(const std::string& i, const TwistedOddData& data);
// A_ij is fixed by tau_i (NotInFixedField otherwise) and a norm from F_i.
bool check_Aij_is_norm(const std::string& i, const std::string& j, const TwistedOddData& data);
// c_D eta P(1) P(-1) is a square.
bool check_cD_square_class(const TwistedOddData& data);
// sgn(C_i) = sgn(B_i) sgn(c_D x_D), B_i = eta Q_X'(X_i)(y_i + 1) tau(x_i) / 2.
bool check_Bi_Ci_consistency(const std::string& i, const TwistedOddData& data);
EtaleElement B_element(const std::string& i, const TwistedOddData& data);

FieldElement eta_from_nu(const FieldElement& nu);

}  // namespace endo
