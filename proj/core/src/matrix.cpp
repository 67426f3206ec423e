#include "distill/matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace distill {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw std::invalid_argument("ragged initializer for RatMatrix");
    for (const auto& x : r) data_.push_back(x);
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatVector RatMatrix::row(std::size_t i) const {
  RatVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

RatVector RatMatrix::col(std::size_t j) const {
  RatVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

RatMatrix RatMatrix::row_slice(std::size_t from, std::size_t to) const {
  assert(from <= to && to <= rows_);
  RatMatrix s(to - from, cols_);
  for (std::size_t i = from; i < to; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s.at(i - from, j) = at(i, j);
  return s;
}

RatMatrix RatMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  RatMatrix s(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    assert(idx[j] < cols_);
    for (std::size_t i = 0; i < rows_; ++i) s.at(i, j) = at(i, idx[j]);
  }
  return s;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

RatMatrix mat_add(const RatMatrix& a, const RatMatrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

RatMatrix mat_sub(const RatMatrix& a, const RatMatrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  assert(a.cols() == b.rows());
  RatMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

RatMatrix mat_scale(const Rational& c, const RatMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
  return r;
}

RatVector mat_apply(const RatMatrix& a, const RatVector& x) {
  assert(a.cols() == x.size());
  RatVector y(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
  return y;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  assert(a.rows() == b.rows());
  RatMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  assert(a.cols() == b.cols() || a.rows() == 0 || b.rows() == 0);
  const std::size_t cols = a.rows() == 0 ? b.cols() : a.cols();
  RatMatrix r(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

RatMatrix column_matrix(const RatVector& v) {
  RatMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
  return m;
}

RatMatrix mat_pow(const RatMatrix& a, unsigned long long n) {
  assert(a.rows() == a.cols());
  RatMatrix result = RatMatrix::identity(a.rows());
  RatMatrix base = a;
  while (n > 0) {
    if (n & 1ull) result = mat_mul(result, base);
    n >>= 1;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

Rational induced_inf_norm(const RatMatrix& a) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += rat_abs(a.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

Rational max_abs_entry(const RatMatrix& a) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (rat_abs(a.at(i, j)) > best) best = rat_abs(a.at(i, j));
  return best;
}

bool is_column_stochastic(const RatMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m.at(i, j) < 0) return false;
      s += m.at(i, j);
    }
    if (s != 1) return false;
  }
  return true;
}

bool is_distribution(const RatVector& mu) {
  Rational s = 0;
  for (const auto& x : mu) {
    if (x < 0) return false;
    s += x;
  }
  return s == 1;
}

} // namespace distill
