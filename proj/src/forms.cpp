#include "endo/forms.hpp"

namespace endo {

QuadraticSpace::QuadraticSpace(TowerPtr field, Matrix<FieldElement> gram)
    : field_(std::move(field)), gram_(std::move(gram)) {
  std::size_t n = gram_.size();
  for (std::size_t i = 0; i < n; ++i) {
    require(gram_[i].size() == n, ErrorKind::InvalidArgument, "Gram matrix must be square");
    for (std::size_t j = 0; j < i; ++j)
      require(gram_[i][j] == gram_[j][i], ErrorKind::NonSymmetric, "Gram matrix is not symmetric");
  }
  if (n > 0)
    require(!determinant(gram_, field_->one()).is_zero(), ErrorKind::Degenerate, "form is degenerate");
}

QuadraticSpace QuadraticSpace::diagonal(const TowerPtr& field, const std::vector<FieldElement>& entries) {
  std::size_t n = entries.size();
  Matrix<FieldElement> g(n, std::vector<FieldElement>(n, field->zero()));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = entries[i];
  return QuadraticSpace(field, std::move(g));
}

QuadraticSpace QuadraticSpace::hyperbolic(const TowerPtr& field, int planes) {
  std::size_t n = 2 * planes;
  Matrix<FieldElement> g(n, std::vector<FieldElement>(n, field->zero()));
  for (int k = 0; k < planes; ++k) {
    g[2 * k][2 * k + 1] = field->one();
    g[2 * k + 1][2 * k] = field->one();
  }
  return QuadraticSpace(field, std::move(g));
}

QuadraticSpace QuadraticSpace::zero_space(const TowerPtr& field) { return QuadraticSpace(field, {}); }

QuadraticSpace QuadraticSpace::operator+(const QuadraticSpace& o) const {
  require(field_ == o.field_, ErrorKind::InvalidArgument, "orthogonal sum across fields");
  std::size_t n = dim(), m = o.dim();
  Matrix<FieldElement> g(n + m, std::vector<FieldElement>(n + m, field_->zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = gram_[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = o.gram_[i][j];
  return QuadraticSpace(field_, std::move(g));
}

QuadraticSpace QuadraticSpace::scaled(const FieldElement& a) const {
  Matrix<FieldElement> g = gram_;
  for (auto& row : g)
    for (auto& x : row) x = x * a;
  return QuadraticSpace(field_, std::move(g));
}

QuadraticSpace QuadraticSpace::congruent(const Matrix<FieldElement>& m) const {
  FieldElement zero = field_->zero();
  return QuadraticSpace(field_, mat_mul(mat_mul(transpose(m), gram_, zero), m, zero));
}

namespace {

// Sort key for pivot choice: smaller is better.
long pivot_weight(const FieldElement& a) {
  if (a.tower()->base().is_real()) return 0;
  return valuation(a);
}

}  // namespace

std::vector<FieldElement> diagonalize(const QuadraticSpace& space) {
  Matrix<FieldElement> a = space.gram();
  FieldElement zero = space.field()->zero();
  std::vector<FieldElement> diag;
  while (!a.empty()) {
    std::size_t n = a.size();
    long best = 0;
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i][i].is_zero()) continue;
      long w = pivot_weight(a[i][i]);
      if (piv == n || w < best) {
        piv = i;
        best = w;
      }
    }
    if (piv == n) {
      // No anisotropic basis vector: replace e_i by e_i + e_j for the first
      // nonzero off-diagonal entry of minimal valuation.
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (a[i][j].is_zero()) continue;
          long w = pivot_weight(a[i][j]);
          if (bi == n || w < best) {
            bi = i;
            bj = j;
            best = w;
          }
        }
      require(bi < n, ErrorKind::Degenerate, "form is degenerate");
      for (std::size_t k = 0; k < n; ++k) a[bi][k] = a[bi][k] + a[bj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][bi] = a[k][bi] + a[k][bj];
      piv = bi;
    }
    FieldElement d = a[piv][piv];
    FieldElement dinv = d.inverse();
    for (std::size_t k = 0; k < n; ++k) {
      if (k == piv || a[k][piv].is_zero()) continue;
      FieldElement t = a[k][piv] * dinv;
      for (std::size_t l = 0; l < n; ++l) a[k][l] = a[k][l] - t * a[piv][l];
      for (std::size_t l = 0; l < n; ++l) a[l][k] = a[l][k] - t * a[l][piv];
    }
    diag.push_back(d);
    Matrix<FieldElement> rest;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == piv) continue;
      std::vector<FieldElement> row;
      for (std::size_t l = 0; l < n; ++l)
        if (l != piv) row.push_back(a[k][l]);
      rest.push_back(std::move(row));
    }
    a = std::move(rest);
  }
  (void)zero;
  return diag;
}

FormInvariants invariants(const QuadraticSpace& space) {
  FormInvariants inv;
  inv.dim = space.dim();
  auto diag = diagonalize(space);
  const TowerPtr& k = space.field();
  FieldElement det = k->one();
  for (const auto& a : diag) det = det * a;
  inv.det_class = square_class(det);
  if (inv.dim % 2 == 0) {
    FieldElement disc = (inv.dim / 2) % 2 ? -det : det;
    inv.discriminant = square_class(disc);
  }
  if (k->base().is_real()) {
    for (const auto& a : diag) (a.coords()[0] > 0 ? inv.positive : inv.negative)++;
    return inv;
  }
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) inv.hasse *= hilbert_symbol(diag[i], diag[j]);
  return inv;
}

bool isomorphic(const QuadraticSpace& a, const QuadraticSpace& b) {
  require(a.field() == b.field(), ErrorKind::InvalidArgument, "forms over different fields");
  if (a.dim() != b.dim()) return false;
  auto ia = invariants(a), ib = invariants(b);
  if (a.field()->base().is_real()) return ia.positive == ib.positive && ia.negative == ib.negative;
  return ia.det_class == ib.det_class && ia.hasse == ib.hasse;
}

namespace {

std::vector<EtaleElement> etale_basis(const EtalePtr& alg) {
  std::vector<EtaleElement> basis;
  const auto& t = alg->base();
  for (int j = 0; j < t->degree(); ++j) basis.push_back(alg->element(t->basis(j)));
  for (int j = 0; j < t->degree(); ++j) basis.push_back(alg->element(t->zero(), t->basis(j)));
  return basis;
}

void place(Matrix<FieldElement>& g, std::size_t offset, const Matrix<Rational>& block, const TowerPtr& base) {
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = 0; j < block.size(); ++j) g[offset + i][offset + j] = base->scalar(block[i][j]);
}

std::size_t total_dim(const std::vector<EtaleElement>& xs, bool line) {
  std::size_t n = line ? 1 : 0;
  for (const auto& x : xs) n += x.algebra()->degree_over_base();
  return n;
}

}  // namespace

Matrix<Rational> trace_bilinear(const EtaleElement& c) {
  auto basis = etale_basis(c.algebra());
  std::size_t n = basis.size();
  Matrix<Rational> g(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    EtaleElement left = basis[j].tau();
    for (std::size_t k = 0; k < n; ++k) g[j][k] = trace_to_base(left * basis[k] * c);
  }
  return g;
}

QuadraticSpace trace_form(const TowerPtr& base, const std::vector<EtaleElement>& cs,
                          const std::optional<FieldElement>& d_line) {
  std::size_t n = total_dim(cs, d_line.has_value());
  Matrix<FieldElement> g(n, std::vector<FieldElement>(n, base->zero()));
  std::size_t off = 0;
  if (d_line) g[off++][0] = *d_line;
  for (const auto& c : cs) {
    require(c.fixed(), ErrorKind::NonSymmetric, "coefficient not fixed by the involution: " + to_string(c));
    auto block = trace_bilinear(c);
    place(g, off, block, base);
    off += block.size();
  }
  return QuadraticSpace(base, std::move(g));
}

QuadraticSpace symmetrize_twisted(const TowerPtr& base, const std::vector<EtaleElement>& xs,
                                  const std::optional<FieldElement>& x_D) {
  std::size_t n = total_dim(xs, x_D.has_value());
  Matrix<FieldElement> g(n, std::vector<FieldElement>(n, base->zero()));
  std::size_t off = 0;
  if (x_D) g[off++][0] = *x_D * Rational(2);
  for (const auto& x : xs) {
    auto b = trace_bilinear(x);
    Matrix<Rational> s = b;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) s[i][j] = b[i][j] + b[j][i];
    place(g, off, s, base);
    off += b.size();
  }
  Matrix<FieldElement> copy = g;
  if (n > 0)
    require(!determinant(copy, base->one()).is_zero(), ErrorKind::Degenerate,
            "symmetrized twisted form is singular");
  return QuadraticSpace(base, std::move(g));
}

}  // namespace endo
