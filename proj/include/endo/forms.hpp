#pragma once

#include <optional>
#include <vector>

#include "endo/etale.hpp"

namespace endo {

// Nondegenerate symmetric bilinear form over a tower, by its Gram matrix.
class QuadraticSpace {
 public:
  // Throws NonSymmetric or Degenerate.
  QuadraticSpace(TowerPtr field, Matrix<FieldElement> gram);
  static QuadraticSpace diagonal(const TowerPtr& field, const std::vector<FieldElement>& entries);
  static QuadraticSpace hyperbolic(const TowerPtr& field, int planes);
  static QuadraticSpace zero_space(const TowerPtr& field);

  const TowerPtr& field() const { return field_; }
  int dim() const { return static_cast<int>(gram_.size()); }
  const Matrix<FieldElement>& gram() const { return gram_; }
  QuadraticSpace operator+(const QuadraticSpace& o) const;  // orthogonal sum
  QuadraticSpace scaled(const FieldElement& a) const;
  // Gram matrix of the form in the basis given by the columns of m.
  QuadraticSpace congruent(const Matrix<FieldElement>& m) const;

 private:
  TowerPtr field_;
  Matrix<FieldElement> gram_;
};

struct FormInvariants {
  int dim = 0;
  SquareClass det_class;
  // (-1)^{d/2} det for even d; the trivial class for d = 0.
  std::optional<SquareClass> discriminant;
  int hasse = 1;           // p-adic only
  int positive = 0;        // real only
  int negative = 0;        // real only
};

// Diagonal entries of a congruent diagonal form. Pivots of minimal valuation,
// ties broken by basis order.
std::vector<FieldElement> diagonalize(const QuadraticSpace& space);
FormInvariants invariants(const QuadraticSpace& space);
bool isomorphic(const QuadraticSpace& a, const QuadraticSpace& b);

// Gram matrix over the base of (w, w') -> Tr_{F_i/F}(tau(w) w' c) on the basis
// b_j, b_j s of F_i, where b_j runs over the tower basis of the fixed field.
Matrix<Rational> trace_bilinear(const EtaleElement& c);

// D + sum F_i with form d_line*w_D*w'_D + sum Tr(tau(w_i) w'_i c_i). Each c_i
// must be fixed by tau (NonSymmetric otherwise).
QuadraticSpace trace_form(const TowerPtr& base, const std::vector<EtaleElement>& cs,
                          const std::optional<FieldElement>& d_line = std::nullopt);

// Symmetrization xt(v,v') + xt(v',v) of the twisted bilinear form
// x_D w_D w'_D + sum Tr(tau(w_i) w'_i x_i). Degenerate if singular.
QuadraticSpace symmetrize_twisted(const TowerPtr& base, const std::vector<EtaleElement>& xs,
                                  const std::optional<FieldElement>& x_D = std::nullopt);

}  // namespace endo
