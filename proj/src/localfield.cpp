#include "endo/localfield.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace endo {

BaseField BaseField::padic(long p, int precision) {
  require(p >= 2, ErrorKind::InvalidArgument, "p must be a prime");
  for (long d = 2; d * d <= p; ++d)
    require(p % d != 0, ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  require(precision >= 8, ErrorKind::InvalidArgument, "precision must be at least 8");
  BaseField b;
  b.kind = BaseKind::Padic;
  b.p = p;
  b.precision = precision;
  return b;
}

BaseField BaseField::real() {
  BaseField b;
  b.kind = BaseKind::Real;
  b.p = 0;
  return b;
}

// ---------------------------------------------------------------- residue field

ResidueField::ResidueField(long p, std::vector<long> modulus) : p_(p), modulus_(std::move(modulus)) {
  require(modulus_.size() >= 2 && modulus_.back() % p_ == 1, ErrorKind::InvalidArgument,
          "residue modulus must be monic of positive degree");
  for (auto& c : modulus_) c = ((c % p_) + p_) % p_;
  f_ = static_cast<int>(modulus_.size()) - 1;
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ *= p_;
  require(q_ <= 1000000, ErrorKind::InvalidArgument, "residue field too large to tabulate");
  log_.assign(q_, -1);
  if (q_ == 2) {
    exp_ = {1};
    log_[1] = 0;
    return;
  }
  for (long g = 2; g < q_; ++g) {
    std::vector<long> powers{1};
    long x = g;
    while (x != 1 && static_cast<long>(powers.size()) < q_) {
      powers.push_back(x);
      x = mul_raw(x, g);
    }
    if (x == 1 && static_cast<long>(powers.size()) == q_ - 1) {
      exp_ = std::move(powers);
      for (long k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
      return;
    }
  }
  fail(ErrorKind::InvalidArgument, "residue modulus is not irreducible mod " + std::to_string(p_));
}

std::vector<long> ResidueField::digits(long a) const {
  std::vector<long> d(f_);
  for (int i = 0; i < f_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

long ResidueField::from_digits(const std::vector<long>& d) const {
  long a = 0;
  for (int i = f_ - 1; i >= 0; --i) a = a * p_ + (((d[i] % p_) + p_) % p_);
  return a;
}

long ResidueField::add(long a, long b) const {
  auto x = digits(a), y = digits(b);
  for (int i = 0; i < f_; ++i) x[i] = (x[i] + y[i]) % p_;
  return from_digits(x);
}

long ResidueField::neg(long a) const {
  auto x = digits(a);
  for (auto& c : x) c = (p_ - c) % p_;
  return from_digits(x);
}

long ResidueField::mul_raw(long a, long b) const {
  auto x = digits(a), y = digits(b);
  std::vector<long> r(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < f_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    long t = r[k];
    if (t == 0) continue;
    r[k] = 0;
    for (int m = 0; m < f_; ++m) r[k - f_ + m] = ((r[k - f_ + m] - t * modulus_[m]) % p_ + p_) % p_;
  }
  r.resize(f_);
  return from_digits(r);
}

long ResidueField::mul(long a, long b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

long ResidueField::inv(long a) const {
  require(a != 0, ErrorKind::DivisionByZero, "residue inverse of 0");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

long ResidueField::pow(long a, long k) const {
  if (a == 0) return k == 0 ? 1 : 0;
  long m = q_ - 1;
  long e = ((log_[a] * (k % m)) % m + m) % m;
  return exp_[e];
}

long ResidueField::log(long a) const {
  require(a > 0 && a < q_, ErrorKind::ZeroValuation, "discrete log of 0");
  return log_[a];
}

long ResidueField::exp(long k) const {
  long m = q_ - 1;
  return exp_[((k % m) + m) % m];
}

long ResidueField::first_nonsquare() const {
  for (long a = 1; a < q_; ++a)
    if (!is_square(a)) return a;
  fail(ErrorKind::InvalidArgument, "residue field has no non-square");
}

// ---------------------------------------------------------------- tower

namespace {

std::vector<Rational> poly_mod_monic(std::vector<Rational> a, const std::vector<Rational>& g) {
  int f = static_cast<int>(g.size()) - 1;
  for (int k = static_cast<int>(a.size()) - 1; k >= f; --k) {
    if (a[k] == 0) continue;
    Rational t = a[k];
    for (int m = 0; m <= f; ++m) a[k - f + m] -= t * g[m];
  }
  a.resize(f, Rational(0));
  return a;
}

int k0_valuation(const std::vector<Rational>& a, long p) {
  int v = 1 << 30;
  for (const auto& c : a)
    if (c != 0) v = std::min(v, padic_valuation(c, p));
  return v;
}

std::string poly_text(const std::vector<Rational>& c, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[k] == 0) continue;
    Rational a = c[k];
    bool neg = a < 0;
    if (neg) a = -a;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (k == 0 || a != 1) {
      os << a.get_str();
      if (k > 0) os << "*";
    }
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

TowerPtr Tower::trivial(const BaseField& base) {
  if (base.is_real()) {
    auto t = std::shared_ptr<Tower>(new Tower());
    t->base_ = base;
    t->unram_ = {Rational(0), Rational(1)};
    t->eis_ = {{Rational(0)}, {Rational(1)}};
    t->pi_coords_ = {Rational(1)};
    t->pi_inv_coords_ = {Rational(1)};
    t->name_ = "R";
    return t;
  }
  return make_rational(base, 1, {Rational(-base.p), Rational(1)});
}

TowerPtr Tower::make_rational(const BaseField& base, int f, const std::vector<Rational>& eis,
                              std::optional<std::vector<Rational>> unram) {
  std::vector<std::vector<Rational>> e;
  for (const auto& c : eis) e.push_back({c});
  return make(base, f, e, std::move(unram));
}

TowerPtr Tower::make(const BaseField& base, int f, const std::vector<std::vector<Rational>>& eis,
                     std::optional<std::vector<Rational>> unram) {
  require(f >= 1, ErrorKind::InvalidArgument, "residue degree must be positive");
  require(eis.size() >= 2, ErrorKind::NotEisenstein, "Eisenstein polynomial must have degree >= 1");
  if (base.is_real()) {
    require(f == 1 && eis.size() == 2, ErrorKind::UnsupportedCase,
            "only the trivial tower is supported over R");
    return trivial(base);
  }
  int e = static_cast<int>(eis.size()) - 1;
  if (base.dyadic() && e * f > 1)
    fail(ErrorKind::DyadicRamifiedUnsupported, "proper extensions of Q_2 are not supported");

  auto t = std::shared_ptr<Tower>(new Tower());
  t->base_ = base;
  t->e_ = e;
  t->f_ = f;
  long p = base.p;

  if (unram) {
    require(static_cast<int>(unram->size()) == f + 1 && unram->back() == 1, ErrorKind::InvalidArgument,
            "unramified polynomial must be monic of degree f");
    for (const auto& c : *unram)
      require(c.get_den() == 1, ErrorKind::InvalidArgument, "unramified polynomial must be integral");
    t->unram_ = *unram;
    std::vector<long> red;
    for (const auto& c : *unram) red.push_back(residue_mod(c, p));
    t->residue_ = std::make_shared<ResidueField>(p, red);
  } else if (f == 1) {
    t->unram_ = {Rational(0), Rational(1)};
    t->residue_ = std::make_shared<ResidueField>(p, std::vector<long>{0, 1});
  } else {
    long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (long idx = 0; idx < count && !t->residue_; ++idx) {
      std::vector<long> coeffs(f + 1, 0);
      long r = idx;
      for (int i = 0; i < f; ++i) {
        coeffs[i] = r % p;
        r /= p;
      }
      coeffs[f] = 1;
      try {
        t->residue_ = std::make_shared<ResidueField>(p, coeffs);
        t->unram_.clear();
        for (long c : coeffs) t->unram_.push_back(Rational(c));
      } catch (const Error&) {
      }
    }
  }

  for (const auto& c : eis) t->eis_.push_back(poly_mod_monic(c, t->unram_));
  for (int k = 0; k < f; ++k)
    require(t->eis_[e][k] == (k == 0 ? 1 : 0), ErrorKind::NotEisenstein, "Eisenstein polynomial must be monic");
  for (int k = 0; k < e; ++k) {
    for (const auto& c : t->eis_[k])
      if (c != 0)
        require(padic_valuation(c, p) >= 1, ErrorKind::NotEisenstein,
                "non-leading coefficients must be divisible by p");
  }
  require(k0_valuation(t->eis_[0], p) == 1, ErrorKind::NotEisenstein,
          "constant term must have valuation exactly 1");

  int n = e * f;
  t->pi_coords_.assign(n, Rational(0));
  if (e == 1) {
    for (int a = 0; a < f; ++a) t->pi_coords_[a] = -t->eis_[0][a];
  } else {
    t->pi_coords_[f] = 1;
  }

  std::ostringstream name;
  name << "Q_" << p;
  if (f > 1) name << "[u]/(" << poly_text(t->unram_, "u") << ")";
  if (e > 1) {
    name << "[pi]/(";
    bool first = true;
    for (int k = e; k >= 0; --k) {
      std::string c = poly_text(t->eis_[k], "u");
      if (c == "0") continue;
      if (!first) name << " + ";
      first = false;
      bool simple = c.find_first_of("+u") == std::string::npos || c.size() == 1;
      if (k == 0)
        name << (simple ? c : "(" + c + ")");
      else {
        if (c != "1") name << (simple ? c : "(" + c + ")") << "*";
        name << "pi";
        if (k > 1) name << "^" << k;
      }
    }
    name << ")";
  }
  t->name_ = name.str();

  FieldElement pi(t, t->pi_coords_);
  t->pi_inv_coords_ = pi.inverse().coords();
  return t;
}

long Tower::q() const { return residue_field().q(); }

const ResidueField& Tower::residue_field() const {
  require(residue_ != nullptr, ErrorKind::UnsupportedCase, "no residue field over R");
  return *residue_;
}

std::vector<Rational> Tower::k0_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  if (f_ == 1) return {a[0] * b[0]};
  std::vector<Rational> r(2 * f_ - 1, Rational(0));
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return poly_mod_monic(std::move(r), unram_);
}

std::vector<Rational> Tower::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  int n = degree();
  if (n == 1) return {a[0] * b[0]};
  auto block = [&](const std::vector<Rational>& v, int k) {
    return std::vector<Rational>(v.begin() + k * f_, v.begin() + (k + 1) * f_);
  };
  auto nonzero = [](const std::vector<Rational>& v) {
    return std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  };
  std::vector<std::vector<Rational>> prod(2 * e_ - 1, std::vector<Rational>(f_, Rational(0)));
  for (int i = 0; i < e_; ++i) {
    auto ai = block(a, i);
    if (!nonzero(ai)) continue;
    for (int j = 0; j < e_; ++j) {
      auto bj = block(b, j);
      if (!nonzero(bj)) continue;
      auto m = k0_mul(ai, bj);
      for (int k = 0; k < f_; ++k) prod[i + j][k] += m[k];
    }
  }
  for (int k = 2 * e_ - 2; k >= e_; --k) {
    if (!nonzero(prod[k])) continue;
    auto top = prod[k];
    for (int m = 0; m < e_; ++m) {
      auto t = k0_mul(top, eis_[m]);
      for (int c = 0; c < f_; ++c) prod[k - e_ + m][c] -= t[c];
    }
  }
  std::vector<Rational> r;
  r.reserve(n);
  for (int k = 0; k < e_; ++k)
    for (int c = 0; c < f_; ++c) r.push_back(prod[k][c]);
  return r;
}

FieldElement Tower::zero() const { return scalar(Rational(0)); }
FieldElement Tower::one() const { return scalar(Rational(1)); }
FieldElement Tower::scalar(const Rational& q) const {
  std::vector<Rational> c(degree(), Rational(0));
  c[0] = q;
  return FieldElement(shared_from_this(), std::move(c));
}
FieldElement Tower::basis(int index) const {
  std::vector<Rational> c(degree(), Rational(0));
  c.at(index) = 1;
  return FieldElement(shared_from_this(), std::move(c));
}
FieldElement Tower::gen_u() const {
  require(f_ > 1, ErrorKind::InvalidArgument, "tower has no unramified generator");
  return basis(1);
}
FieldElement Tower::gen_pi() const {
  require(e_ > 1, ErrorKind::InvalidArgument, "tower has no Eisenstein generator");
  return basis(f_);
}
FieldElement Tower::uniformizer() const { return FieldElement(shared_from_this(), pi_coords_); }
FieldElement Tower::uniformizer_inverse() const { return FieldElement(shared_from_this(), pi_inv_coords_); }

FieldElement Tower::lift_residue(long r) const {
  auto d = residue_field().digits(r);
  std::vector<Rational> c(degree(), Rational(0));
  for (int a = 0; a < f_; ++a) c[a] = d[a];
  return FieldElement(shared_from_this(), std::move(c));
}

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(TowerPtr tower, std::vector<Rational> coords)
    : tower_(std::move(tower)), c_(std::move(coords)) {
  require(static_cast<int>(c_.size()) == tower_->degree(), ErrorKind::InvalidArgument,
          "coordinate vector does not match tower degree");
  for (auto& q : c_) q.canonicalize();
}

FieldElement FieldElement::from_rational(TowerPtr tower, const Rational& q) { return tower->scalar(q); }

void FieldElement::same_tower(const FieldElement& o) const {
  require(tower_ == o.tower_, ErrorKind::InvalidArgument, "elements live in different towers");
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
}

Rational FieldElement::as_rational() const {
  require(is_rational(), ErrorKind::InvalidArgument, "element is not rational");
  return c_[0];
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  same_tower(o);
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return FieldElement(tower_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  same_tower(o);
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return FieldElement(tower_, std::move(r));
}

FieldElement FieldElement::operator-() const {
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return FieldElement(tower_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  same_tower(o);
  return FieldElement(tower_, tower_->multiply(c_, o.c_));
}

FieldElement FieldElement::operator*(const Rational& q) const {
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * q;
  return FieldElement(tower_, std::move(r));
}

FieldElement FieldElement::inverse() const {
  require(!is_zero(), ErrorKind::DivisionByZero, "inverse of 0");
  if (is_rational()) return tower_->scalar(1 / c_[0]);
  std::vector<Rational> rhs(c_.size(), Rational(0));
  rhs[0] = 1;
  return FieldElement(tower_, solve(mult_matrix(*this), rhs));
}

FieldElement FieldElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElement result = tower_->one();
  FieldElement base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
  same_tower(o);
  return c_ == o.c_;
}

Matrix<Rational> mult_matrix(const FieldElement& a) {
  const auto& t = *a.tower();
  int n = t.degree();
  Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> bj(n, Rational(0));
    bj[j] = 1;
    auto col = t.multiply(a.coords(), bj);
    for (int i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

Rational norm_to_base(const FieldElement& a) {
  if (a.tower()->degree() == 1) return a.coords()[0];
  return determinant(mult_matrix(a), Rational(1));
}

Rational trace_to_base(const FieldElement& a) {
  const auto& t = *a.tower();
  int n = t.degree();
  if (n == 1) return a.coords()[0];
  Rational tr = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> bj(n, Rational(0));
    bj[j] = 1;
    tr += t.multiply(a.coords(), bj)[j];
  }
  return tr;
}

PolyQ charpoly_to_base(const FieldElement& a) { return charpoly(mult_matrix(a), Rational(1)); }

int valuation(const FieldElement& a) {
  const auto& t = *a.tower();
  require(!t.base().is_real(), ErrorKind::UnsupportedCase, "no valuation on R");
  require(!a.is_zero(), ErrorKind::ZeroValuation, "valuation of 0");
  int v = 1 << 30;
  for (int idx = 0; idx < t.degree(); ++idx) {
    const auto& c = a.coords()[idx];
    if (c == 0) continue;
    int b = idx / t.f();
    v = std::min(v, t.e() * padic_valuation(c, t.p()) + b);
  }
  if (v >= t.base().precision * t.e())
    fail(ErrorKind::PrecisionExhausted, "element indistinguishable from 0 at precision " +
                                            std::to_string(t.base().precision));
  return v;
}

int valuation_via_norm(const FieldElement& a) {
  const auto& t = *a.tower();
  require(!a.is_zero(), ErrorKind::ZeroValuation, "valuation of 0");
  return padic_valuation(norm_to_base(a), t.p()) / t.f();
}

UnitDecomposition decompose(const FieldElement& a) {
  const auto& t = *a.tower();
  UnitDecomposition d;
  d.val = valuation(a);
  if (t.base().dyadic()) {
    Rational u = a.coords()[0];
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(d.val)));
    if (d.val >= 0)
      u /= Rational(two_pow);
    else
      u *= Rational(two_pow);
    d.residue = residue_mod(u, 8);
    return d;
  }
  FieldElement pi_inv = t.uniformizer_inverse();
  FieldElement w = a;
  if (pi_inv.is_rational()) {
    Rational s = pi_inv.as_rational();
    Rational k = 1;
    for (int i = 0; i < std::abs(d.val); ++i) k *= s;
    if (d.val < 0) k = 1 / k;
    w = a * k;
  } else {
    w = a * pi_inv.pow(d.val);
  }
  std::vector<long> dig(t.f());
  for (int i = 0; i < t.f(); ++i) dig[i] = residue_mod(w.coords()[i], t.p());
  d.residue = t.residue_field().from_digits(dig);
  require(d.residue != 0, ErrorKind::PrecisionExhausted, "unit part has zero residue");
  return d;
}

SquareClass square_class(const FieldElement& a) {
  const auto& t = *a.tower();
  SquareClass c;
  if (t.base().is_real()) {
    require(!a.is_zero(), ErrorKind::ZeroValuation, "square class of 0");
    c.unit = a.coords()[0] > 0 ? 1 : -1;
    return c;
  }
  auto d = decompose(a);
  c.parity = ((d.val % 2) + 2) % 2;
  if (t.base().dyadic())
    c.unit = static_cast<int>(d.residue);
  else
    c.unit = t.residue_field().is_square(d.residue) ? 1 : -1;
  return c;
}

bool is_square(const FieldElement& a) { return square_class(a).trivial(); }

FieldElement class_representative(const TowerPtr& t, const SquareClass& c) {
  if (t->base().is_real()) return t->scalar(Rational(c.unit));
  if (t->base().dyadic()) return t->scalar(Rational(c.unit * (c.parity ? 2 : 1)));
  FieldElement r = c.unit == 1 ? t->one() : t->lift_residue(t->residue_field().first_nonsquare());
  if (c.parity) r = r * t->uniformizer();
  return r;
}

std::vector<SquareClass> square_classes(const TowerPtr& t) {
  if (t->base().is_real()) return {{0, 1}, {0, -1}};
  if (t->base().dyadic()) {
    std::vector<SquareClass> r;
    for (int par = 0; par < 2; ++par)
      for (int u : {1, 3, 5, 7}) r.push_back({par, u});
    return r;
  }
  return {{0, 1}, {0, -1}, {1, 1}, {1, -1}};
}

std::string describe(const SquareClass& c, const Tower& t) {
  if (t.base().is_real()) return c.unit > 0 ? "+1" : "-1";
  if (t.base().dyadic()) return std::string(c.parity ? "2*" : "") + std::to_string(c.unit);
  std::string s = c.unit == 1 ? "1" : "u";
  if (c.parity) s = (c.unit == 1) ? "pi" : "u*pi";
  return s;
}

int hilbert_symbol(const FieldElement& a, const FieldElement& b) {
  require(a.tower() == b.tower(), ErrorKind::InvalidArgument, "Hilbert symbol across towers");
  const auto& t = *a.tower();
  if (t.base().is_real()) {
    require(!a.is_zero() && !b.is_zero(), ErrorKind::ZeroValuation, "Hilbert symbol of 0");
    return (a.coords()[0] < 0 && b.coords()[0] < 0) ? -1 : 1;
  }
  auto da = decompose(a);
  auto db = decompose(b);
  if (t.base().dyadic()) {
    auto eps = [](long u) { return ((u - 1) / 2) % 2; };
    auto omega = [](long u) { return ((u * u - 1) / 8) % 2; };
    long ex = eps(da.residue) * eps(db.residue) + da.val * omega(db.residue) + db.val * omega(da.residue);
    return (((ex % 2) + 2) % 2) ? -1 : 1;
  }
  const auto& k = t.residue_field();
  long half = (k.q() - 1) / 2;
  long ex = static_cast<long>(da.val) * db.val * half + static_cast<long>(db.val) * k.log(da.residue) -
            static_cast<long>(da.val) * k.log(db.residue);
  return (((ex % 2) + 2) % 2) ? -1 : 1;
}

int norm_test(const FieldElement& c, const FieldElement& delta) { return hilbert_symbol(c, delta); }

int brute_force_norm_oracle(const FieldElement& c, const FieldElement& delta, int depth) {
  require(c.tower() == delta.tower(), ErrorKind::InvalidArgument, "oracle across towers");
  const TowerPtr& t = c.tower();
  require(!t->base().is_real(), ErrorKind::UnsupportedCase, "oracle needs a p-adic base");
  FieldElement four_delta = delta * Rational(4);
  require(depth > valuation(four_delta), ErrorKind::DepthTooSmall,
          "depth " + std::to_string(depth) + " must exceed v(4*delta) = " + std::to_string(valuation(four_delta)));
  (void)valuation(c);

  // Squares tested modulo pi^h with h = v(4) + 1, enough by Hensel.
  std::set<long> unit_squares;
  std::vector<FieldElement> units;
  if (t->base().dyadic()) {
    for (long r : {1, 3, 5, 7}) {
      units.push_back(t->scalar(Rational(r)));
      unit_squares.insert((r * r) % 8);
    }
  } else {
    const auto& k = t->residue_field();
    for (long r = 1; r < k.q(); ++r) {
      units.push_back(t->lift_residue(r));
      unit_squares.insert(k.mul(r, r));
    }
  }
  auto is_square_brute = [&](const FieldElement& x) {
    auto d = decompose(x);
    if (d.val % 2 != 0) return false;
    return unit_squares.count(d.residue) > 0;
  };

  std::vector<FieldElement> cands{t->zero()};
  FieldElement pi = t->uniformizer();
  for (const auto& u : units) {
    cands.push_back(u);
    cands.push_back(u * pi);
  }
  std::vector<FieldElement> sq, dsq;
  for (const auto& x : cands) {
    sq.push_back(x * x);
    dsq.push_back(delta * x * x);
  }
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = 0; j < cands.size(); ++j) {
      FieldElement n = sq[i] - dsq[j];
      if (n.is_zero()) continue;
      if (is_square_brute(c * n)) return 1;
    }
  return -1;
}

std::string to_string(const FieldElement& a) {
  const auto& t = *a.tower();
  std::ostringstream os;
  bool first = true;
  for (int idx = 0; idx < t.degree(); ++idx) {
    Rational c = a.coords()[idx];
    if (c == 0) continue;
    int ua = idx % t.f(), pb = idx / t.f();
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    if (ua >= 1) mono += ua == 1 ? "u" : "u^" + std::to_string(ua);
    if (pb >= 1) mono += std::string(mono.empty() ? "" : "*") + (pb == 1 ? "pi" : "pi^" + std::to_string(pb));
    if (mono.empty())
      os << c.get_str();
    else if (c == 1)
      os << mono;
    else
      os << c.get_str() << "*" << mono;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace endo
