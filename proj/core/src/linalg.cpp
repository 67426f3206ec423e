#include "distill/linalg.hpp"

#include <cassert>

namespace distill {

namespace {

/* Forward elimination on [lhs | rhs] with pivots restricted to the first
 * lhs_cols columns. One-step Bareiss: every entry after step k is a (k+1)x(k+1)
 * minor of the input, so the division by the previous pivot is exact and
 * intermediate numbers stay the size of determinants rather than exploding. */
Echelon eliminate(RatMatrix a, std::size_t lhs_cols) {
  Echelon e;
  const std::size_t rows = a.rows(), cols = a.cols();
  Rational prev_pivot = 1;
  std::size_t r = 0;
  int sign = 1;
  for (std::size_t c = 0; c < lhs_cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(piv, j));
      sign = -sign;
    }
    const Rational p = a.at(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Rational f = a.at(i, c);
      for (std::size_t j = 0; j < cols; ++j)
        a.at(i, j) = (a.at(i, j) * p - f * a.at(r, j)) / prev_pivot;
      a.at(i, c) = 0;
    }
    prev_pivot = p;
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.mat = std::move(a);
  e.sign = sign;
  return e;
}

/* Back-substitution on an echelon form: fills the pivot variables of
 * lhs x = rhs given values for all free variables already placed in x.
 * rhs is the column rhs_col of the echelon when given, the zero vector
 * otherwise (the homogeneous case). Returns false when some zero row has a
 * nonzero right-hand side. */
bool back_substitute(const Echelon& e, std::size_t lhs_cols,
                     std::optional<std::size_t> rhs_col, RatVector& x) {
  const auto& m = e.mat;
  const std::size_t nrank = e.pivot_cols.size();
  if (rhs_col)
    for (std::size_t i = nrank; i < m.rows(); ++i)
      if (m.at(i, *rhs_col) != 0) return false;
  for (std::size_t ii = nrank; ii-- > 0;) {
    const std::size_t pc = e.pivot_cols[ii];
    Rational acc = rhs_col ? m.at(ii, *rhs_col) : Rational(0);
    for (std::size_t j = pc + 1; j < lhs_cols; ++j)
      if (m.at(ii, j) != 0) acc -= m.at(ii, j) * x[j];
    x[pc] = acc / m.at(ii, pc);
  }
  return true;
}

} // namespace

Echelon bareiss_echelon(RatMatrix a) {
  const std::size_t n = a.cols();
  return eliminate(std::move(a), n);
}

std::size_t rank(const RatMatrix& a) {
  return bareiss_echelon(a).pivot_cols.size();
}

RatMatrix kernel_basis(const RatMatrix& a) {
  const std::size_t n = a.cols();
  const Echelon e = bareiss_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(n, Rational(0));
    x[f] = 1;
    const bool ok = back_substitute(e, n, std::nullopt, x);
    assert(ok);
    (void)ok;
    basis.push_back(canonical_integer_direction(x));
  }

  RatMatrix k(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) k.at(i, j) = basis[j][i];
  return k;
}

ColumnSpace column_space_basis(const RatMatrix& a) {
  const Echelon e = bareiss_echelon(a);
  ColumnSpace cs;
  cs.indices = e.pivot_cols;
  cs.basis = a.select_cols(e.pivot_cols);
  return cs;
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  assert(a.rows() == b.size());
  const std::size_t n = a.cols();
  RatMatrix aug = hstack(a, column_matrix(b));
  const Echelon e = eliminate(std::move(aug), n);
  RatVector x(n, Rational(0));
  if (!back_substitute(e, n, n, x)) return std::nullopt;
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  RatMatrix aug = hstack(a, RatMatrix::identity(n));
  const Echelon e = eliminate(std::move(aug), n);
  if (e.pivot_cols.size() < n) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector x(n, Rational(0));
    const bool ok = back_substitute(e, n, n + j, x);
    assert(ok);
    (void)ok;
    for (std::size_t i = 0; i < n; ++i) inv.at(i, j) = x[i];
  }
  return inv;
}

RatPoly charpoly(const RatMatrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  RatVector c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix m = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const RatMatrix am = mat_mul(a, m);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am.at(i, i);
    c[n - k] = -tr / Rational(k);
    if (k < n) {
      m = am;
      for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k];
    }
  }
  return RatPoly(std::move(c));
}

RatMatrix poly_eval_matrix(const RatPoly& p, const RatMatrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  RatMatrix acc(n, n);
  for (long d = p.degree(); d >= 0; --d) {
    acc = mat_mul(acc, a);
    const Rational c = p.coeff(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += c;
  }
  return acc;
}

RatMatrix companion(const RatPoly& monic) {
  assert(monic.is_monic() || monic.degree() == 0);
  const long d = monic.degree();
  assert(d >= 0);
  const std::size_t n = static_cast<std::size_t>(d);
  RatMatrix c(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
  for (std::size_t i = 0; i < n; ++i) c.at(i, n - 1) = -monic.coeff(i);
  return c;
}

} // namespace distill
