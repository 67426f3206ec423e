#pragma once

#include "distill/matrix.hpp"
#include "distill/poly.hpp"

#include <optional>
#include <vector>

namespace distill {

/* Forward pass of fraction-free (Bareiss) elimination with leftmost-first
 * pivot selection and row swaps only. Exact over Q; deterministic, so every
 * basis the pipeline builds out of pivots is reproducible. */
struct Echelon {
  RatMatrix mat;                   // upper echelon, Bareiss-scaled rows
  std::vector<std::size_t> pivot_cols;
  int sign = 1;                    // parity of the row swaps
};
Echelon bareiss_echelon(RatMatrix a);

std::size_t rank(const RatMatrix& a);

/* Basis of {x : a x = 0} as matrix columns, each scaled to coprime integer
 * entries with the first nonzero entry positive. Free variables are taken in
 * ascending column order, so the basis is canonical. */
RatMatrix kernel_basis(const RatMatrix& a);

/* The leftmost maximal independent set of columns: the basis of the column
 * space as they appear in a, plus their indices. */
struct ColumnSpace {
  RatMatrix basis;
  std::vector<std::size_t> indices;
};
ColumnSpace column_space_basis(const RatMatrix& a);

/* One solution of a x = b with every free variable pinned to zero, or
 * nullopt when the system is inconsistent. */
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

/* Exact inverse, or nullopt when singular. */
std::optional<RatMatrix> inverse(const RatMatrix& a);

/* Characteristic polynomial det(xI - a), monic, by the Faddeev-LeVerrier
 * recurrence (division-free up to exact integer divisions). charpoly of the
 * 0x0 matrix is 1. */
RatPoly charpoly(const RatMatrix& a);

/* p(a) by Horner's rule over matrices. */
RatMatrix poly_eval_matrix(const RatPoly& p, const RatMatrix& a);

/* Companion matrix of a monic polynomial of degree >= 0. */
RatMatrix companion(const RatPoly& monic);

} // namespace distill
