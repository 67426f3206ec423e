#pragma once

#include "distill/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace distill {

/* Dense rational matrix, row-major. Zero-dimensional shapes (0xn, nx0, 0x0)
 * are legal everywhere: the pipeline's fully-reduced systems live in R^0. */
class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const RatMatrix& o) const = default;

  [[nodiscard]] RatMatrix transpose() const;
  [[nodiscard]] RatVector row(std::size_t i) const;
  [[nodiscard]] RatVector col(std::size_t j) const;

  /* Submatrix of whole rows [from, to). */
  [[nodiscard]] RatMatrix row_slice(std::size_t from, std::size_t to) const;
  /* Columns picked by index, in the order given. */
  [[nodiscard]] RatMatrix select_cols(const std::vector<std::size_t>& idx) const;

  [[nodiscard]] bool is_zero() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix mat_add(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_sub(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_scale(const Rational& c, const RatMatrix& a);
RatVector mat_apply(const RatMatrix& a, const RatVector& x);

/* [a | b] and [a ; b]. */
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix column_matrix(const RatVector& v);

/* a^n by binary exponentiation; a must be square, a^0 = I. */
RatMatrix mat_pow(const RatMatrix& a, unsigned long long n);

/* Operator norm induced by the max norm: max_i sum_j |a_ij|. Empty shapes
 * give 0 (max over no rows). */
Rational induced_inf_norm(const RatMatrix& a);

/* Largest |a_ij|; 0 for empty shapes. */
Rational max_abs_entry(const RatMatrix& a);

/* Exact stochasticity checks: columns sum to one with nonnegative entries;
 * a distribution additionally sums to one. */
bool is_column_stochastic(const RatMatrix& m);
bool is_distribution(const RatVector& mu);

} // namespace distill
