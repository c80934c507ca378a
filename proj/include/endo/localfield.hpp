#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "endo/error.hpp"
#include "endo/linalg.hpp"
#include "endo/rational.hpp"

namespace endo {

enum class BaseKind { Padic, Real };

// Q_p or R. Elements of the base are exact rationals; precision is the
// valuation bound past which an element counts as indistinguishable from 0.
struct BaseField {
  BaseKind kind = BaseKind::Padic;
  long p = 0;
  int precision = 64;

  static BaseField padic(long p, int precision = 64);
  static BaseField real();
  bool is_real() const { return kind == BaseKind::Real; }
  bool dyadic() const { return kind == BaseKind::Padic && p == 2; }
  bool operator==(const BaseField& o) const {
    return kind == o.kind && p == o.p && precision == o.precision;
  }
};

// F_q = F_p[u]/(g), elements encoded as integers whose base-p digits are the
// coefficients of 1, u, ..., u^{f-1}.
class ResidueField {
 public:
  // Throws InvalidArgument when the modulus is not irreducible.
  ResidueField(long p, std::vector<long> modulus);

  long p() const { return p_; }
  int f() const { return f_; }
  long q() const { return q_; }
  long add(long a, long b) const;
  long neg(long a) const;
  long mul(long a, long b) const;
  long inv(long a) const;
  long pow(long a, long k) const;
  long one() const { return 1; }
  long generator() const { return exp_[1 % (q_ - 1)]; }
  // Discrete logarithm to the generator; a must be nonzero.
  long log(long a) const;
  long exp(long k) const;
  bool is_square(long a) const { return log(a) % 2 == 0; }
  long first_nonsquare() const;
  std::vector<long> digits(long a) const;
  long from_digits(const std::vector<long>& d) const;

 private:
  long mul_raw(long a, long b) const;

  long p_;
  int f_;
  long q_;
  std::vector<long> modulus_;
  std::vector<long> exp_;
  std::vector<long> log_;
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

// Element of a tower K = Q_p(u)(pi), stored in the integral basis u^a pi^b
// (a < f, b < e) with exact rational coordinates; index b*f + a.
class FieldElement {
 public:
  FieldElement(TowerPtr tower, std::vector<Rational> coords);
  static FieldElement from_rational(TowerPtr tower, const Rational& q);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational as_rational() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator*(const Rational& q) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement inverse() const;
  FieldElement pow(long k) const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void same_tower(const FieldElement& o) const;
  TowerPtr tower_;
  std::vector<Rational> c_;
};

inline bool is_zero(const FieldElement& a) { return a.is_zero(); }
inline FieldElement inverse(const FieldElement& a) { return a.inverse(); }

class Tower : public std::enable_shared_from_this<Tower> {
 public:
  // The base field itself.
  static TowerPtr trivial(const BaseField& base);
  // eis: coefficients (low degree first) of a monic Eisenstein polynomial over
  // the unramified step, each coefficient a polynomial in u. unram: monic
  // integer polynomial of degree f irreducible mod p; the first such in
  // lexicographic order of coefficients in [0, p) when absent.
  static TowerPtr make(const BaseField& base, int f, const std::vector<std::vector<Rational>>& eis,
                       std::optional<std::vector<Rational>> unram = std::nullopt);
  // Convenience for Eisenstein polynomials with rational coefficients.
  static TowerPtr make_rational(const BaseField& base, int f, const std::vector<Rational>& eis,
                                std::optional<std::vector<Rational>> unram = std::nullopt);

  const BaseField& base() const { return base_; }
  int e() const { return e_; }
  int f() const { return f_; }
  int degree() const { return e_ * f_; }
  long p() const { return base_.p; }
  long q() const;
  bool is_trivial() const { return e_ == 1 && f_ == 1; }
  const std::string& name() const { return name_; }
  const std::vector<Rational>& unramified_poly() const { return unram_; }
  const std::vector<std::vector<Rational>>& eisenstein_poly() const { return eis_; }
  const ResidueField& residue_field() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement scalar(const Rational& q) const;
  FieldElement basis(int index) const;
  // Generators as elements: u (unramified step) and the Eisenstein root.
  FieldElement gen_u() const;
  FieldElement gen_pi() const;
  FieldElement uniformizer() const;
  FieldElement uniformizer_inverse() const;
  // Lift of a residue encoded as in ResidueField.
  FieldElement lift_residue(long r) const;

  // Internal arithmetic on coordinate vectors.
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;

 private:
  Tower() = default;
  std::vector<Rational> k0_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  void finish();

  BaseField base_;
  int e_ = 1;
  int f_ = 1;
  std::vector<Rational> unram_;
  std::vector<std::vector<Rational>> eis_;
  std::string name_;
  std::shared_ptr<ResidueField> residue_;
  std::vector<Rational> pi_coords_;
  std::vector<Rational> pi_inv_coords_;
};

Matrix<Rational> mult_matrix(const FieldElement& a);
// Norm and trace down to the base.
Rational norm_to_base(const FieldElement& a);
Rational trace_to_base(const FieldElement& a);
PolyQ charpoly_to_base(const FieldElement& a);

// Normalized valuation (v(pi) = 1) read off the integral basis.
int valuation(const FieldElement& a);
// Same value computed as v_p(N_{K/Q_p}(a)) / f.
int valuation_via_norm(const FieldElement& a);

struct UnitDecomposition {
  int val = 0;
  long residue = 0;  // residue of a * pi^{-val} in F_q (odd p), or the unit mod 8 (Q_2)
};
UnitDecomposition decompose(const FieldElement& a);

// Square class: parity of the valuation and a unit code. Odd residue
// characteristic: unit 1 (square residue) or -1 (the u class). Q_2: unit mod 8.
// R: parity 0 and unit = sign.
struct SquareClass {
  int parity = 0;
  int unit = 1;
  bool trivial() const { return parity == 0 && unit == 1; }
  bool operator==(const SquareClass& o) const { return parity == o.parity && unit == o.unit; }
  bool operator!=(const SquareClass& o) const { return !(*this == o); }
};

SquareClass square_class(const FieldElement& a);
bool is_square(const FieldElement& a);
FieldElement class_representative(const TowerPtr& t, const SquareClass& c);
std::vector<SquareClass> square_classes(const TowerPtr& t);
std::string describe(const SquareClass& c, const Tower& t);

// (a, b) in {+1, -1}.
int hilbert_symbol(const FieldElement& a, const FieldElement& b);
// +1 iff c is a norm from K(sqrt(delta)).
int norm_test(const FieldElement& c, const FieldElement& delta);
// Search for t with c * N(t) a square, t = x + y sqrt(delta) running over
// valuation-and-residue representatives. depth must exceed v(4 delta).
int brute_force_norm_oracle(const FieldElement& c, const FieldElement& delta, int depth);

std::string to_string(const FieldElement& a);

}  // namespace endo
