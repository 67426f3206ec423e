#pragma once

/* Independent oracles the test suite checks the library against. Everything
 * here is deliberately implemented by a different algorithm than the code
 * under test: characteristic polynomials by Laplace cofactor expansion
 * instead of Faddeev-LeVerrier, power-spectrum identities through Sylvester
 * resultants, unit-circle membership through a floating-point eigensolver,
 * and omega-word acceptance through plain long simulation with verified
 * periodicity. */

#include "distill/automata.hpp"
#include "distill/matrix.hpp"
#include "distill/poly.hpp"
#include "distill/rational.hpp"
#include "distill/reduce.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace testsupport {

using distill::RatMatrix;
using distill::RatPoly;
using distill::Rational;
using distill::RatVector;

using PolyMatrix = std::vector<std::vector<RatPoly>>;

/* Determinant by recursive first-row cofactor expansion; exponential, fine
 * for the dimensions the tests use (<= 5). */
inline RatPoly laplace_poly_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return RatPoly::constant(1);
  if (n == 1) return m[0][0];
  RatPoly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<RatPoly> row;
      row.reserve(n - 1);
      for (std::size_t l = 0; l < n; ++l)
        if (l != j) row.push_back(m[i][l]);
      minor.push_back(std::move(row));
    }
    RatPoly term = distill::poly_mul(m[0][j], laplace_poly_det(minor));
    if (j % 2 == 1) term = distill::poly_scale(Rational(-1), term);
    det = distill::poly_add(det, term);
  }
  return det;
}

/* det(xI - m) by cofactor expansion over Q[x]. */
inline RatPoly laplace_charpoly(const RatMatrix& m) {
  const std::size_t n = m.rows();
  PolyMatrix xm(n, std::vector<RatPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) xm[i][j] = RatPoly({-m.at(i, j), Rational(1)});
      else if (m.at(i, j) != 0) xm[i][j] = RatPoly::constant(-m.at(i, j));
    }
  return laplace_poly_det(xm);
}

/* Fraction-free (Bareiss) determinant over Q[y]; all divisions are exact in
 * the polynomial ring. Handles the Sylvester sizes (<= 10) comfortably. */
inline RatPoly bareiss_poly_det(PolyMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return RatPoly::constant(1);
  int sign = 1;
  RatPoly prev = RatPoly::constant(1);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::size_t pivot = r;
    while (pivot < n && a[pivot][r].is_zero()) ++pivot;
    if (pivot == n) return RatPoly();
    if (pivot != r) {
      std::swap(a[pivot], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < n; ++i)
      for (std::size_t j = r + 1; j < n; ++j)
        a[i][j] = distill::poly_exact_div(
            distill::poly_sub(distill::poly_mul(a[r][r], a[i][j]),
                              distill::poly_mul(a[i][r], a[r][j])),
            prev);
    prev = a[r][r];
  }
  RatPoly det = a[n - 1][n - 1];
  if (sign < 0) det = distill::poly_scale(Rational(-1), det);
  return det;
}

/* Res_x(p(x), x^c - y) as an element of Q[y], via the Sylvester matrix:
 * c rows of p's coefficients (highest first) and deg(p) rows of the
 * coefficients of x^c - y. For monic p of degree k this equals
 * prod_i (lambda_i^c - y) over the roots of p, so
 * charpoly(B^c)(y) = (-1)^k * Res_x(charpoly(B)(x), x^c - y). */
inline RatPoly sylvester_resultant_power(const RatPoly& p, std::size_t c) {
  const auto k = static_cast<std::size_t>(p.degree());
  const std::size_t n = k + c;
  PolyMatrix s(n, std::vector<RatPoly>(n));
  for (std::size_t r = 0; r < c; ++r)
    for (std::size_t j = 0; j <= k; ++j) {
      const Rational coeff = p.coeff(k - j);  // highest first
      if (coeff != 0) s[r][r + j] = RatPoly::constant(coeff);
    }
  for (std::size_t r = 0; r < k; ++r) {
    s[c + r][r] = RatPoly::constant(Rational(1));        // x^c
    s[c + r][r + c] = RatPoly({Rational(0), Rational(-1)});  // -y
  }
  return bareiss_poly_det(std::move(s));
}

/* Frozen table of cyclotomic polynomials (coefficients lowest-first),
 * independently transcribed rather than computed. */
inline RatPoly cyclotomic_table(std::uint32_t d) {
  const auto mk = [](std::vector<long> c) {
    RatVector v(c.begin(), c.end());
    return RatPoly(std::move(v));
  };
  switch (d) {
    case 1: return mk({-1, 1});
    case 2: return mk({1, 1});
    case 3: return mk({1, 1, 1});
    case 4: return mk({1, 0, 1});
    case 5: return mk({1, 1, 1, 1, 1});
    case 6: return mk({1, -1, 1});
    case 7: return mk({1, 1, 1, 1, 1, 1, 1});
    case 8: return mk({1, 0, 0, 0, 1});
    case 9: return mk({1, 0, 0, 1, 0, 0, 1});
    case 10: return mk({1, -1, 1, -1, 1});
    case 12: return mk({1, 0, -1, 0, 1});
    default: return RatPoly();
  }
}

/* Floating-point eigenvalue counts in the spectral bands the acceptance
 * criteria pin: |lambda| < 1e-6 counts as zero, |lambda| > 1 - 1e-6 as unit
 * modulus, everything between as dynamical. */
struct EigenBandCounts {
  std::size_t zeros = 0;
  std::size_t units = 0;
  std::size_t dyn = 0;
};

inline EigenBandCounts eigen_band_counts(const RatMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
                    .convert_to<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  EigenBandCounts counts;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mod = std::abs(es.eigenvalues()(i));
    if (mod < 1e-6) ++counts.zeros;
    else if (mod > 1.0 - 1e-6) ++counts.units;
    else ++counts.dyn;
  }
  return counts;
}

/* Expands a product-automaton lasso into base letters through a letter map. */
inline distill::automata::Lasso flatten_lasso(
    const distill::automata::Lasso& w,
    const std::vector<std::vector<distill::automata::Letter>>& letter_map) {
  distill::automata::Lasso flat;
  for (distill::automata::Letter s : w.prefix)
    flat.prefix.insert(flat.prefix.end(), letter_map[s].begin(), letter_map[s].end());
  for (distill::automata::Letter s : w.cycle)
    flat.cycle.insert(flat.cycle.end(), letter_map[s].begin(), letter_map[s].end());
  return flat;
}

/* Independent omega-verdict by plain simulation: simulate the characteristic
 * word far past `settle`, verify it really is `period`-periodic from there,
 * then find a recurring (state, phase) pair and evaluate the Muller condition
 * on the states of the recurring stretch. nullopt when periodicity fails,
 * which in the acceptance suites is itself a test failure. */
inline std::optional<bool> simulated_word_verdict(
    const distill::reduce::StochasticInstance& inst, std::size_t settle,
    std::size_t period) {
  namespace aut = distill::automata;
  if (period == 0) period = 1;
  const std::size_t states = inst.spec.num_states;
  const std::size_t horizon = settle + (states * period + 2) * period + period;
  const std::vector<aut::Letter> letters =
      distill::reduce::simulate_letters(inst.M, inst.mu, inst.targets, horizon);
  for (std::size_t t = settle; t + period < horizon; ++t)
    if (letters[t] != letters[t + period]) return std::nullopt;

  const aut::RunResult rr = aut::run(inst.spec, letters);
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> seen;
  for (std::size_t t = settle; t <= horizon; ++t) {
    const std::pair<std::uint32_t, std::size_t> key{rr.visited[t], (t - settle) % period};
    const auto [it, inserted] = seen.emplace(key, t);
    if (!inserted) {
      aut::StateSet inf_labels;
      for (std::size_t u = it->second; u < t; ++u)
        inf_labels = aut::set_union(inf_labels, inst.spec.labels[rr.visited[u]]);
      for (const aut::StateSet& fam : inst.spec.acceptance)
        if (fam == inf_labels) return true;
      return false;
    }
  }
  return std::nullopt;
}

} // namespace testsupport
