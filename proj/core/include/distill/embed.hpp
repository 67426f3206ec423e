#pragma once

#include "distill/automata.hpp"
#include "distill/matrix.hpp"
#include "distill/rational.hpp"
#include "distill/reduce.hpp"
#include "distill/semialg.hpp"

#include <vector>

namespace distill::embed {

/* A rational linear dynamical system x -> A x started at v, with the same
 * target/specification apparatus as the stochastic side. For the full
 * instance transformation the targets must be homogeneous, so that positive
 * rescaling along the trajectory cannot change membership. */
struct LdsInstance {
  RatMatrix A;  // k x k
  RatVector v;
  std::vector<semialg::SemialgebraicSet> targets;
  automata::MullerAutomaton spec;
};

/* The hardness-direction construction: an order-(k+1) strictly positive
 * column-stochastic matrix whose trajectory replays the LDS orbit in a
 * hyperplane chart around the stationary vector s:
 *   M^n mu = s + eta rho^n Q A^n v   for all n >= 0, exactly,
 * with Q = [I; -1^T] and [1^T; Qp] the inverse of [s Q]. */
struct Embedding {
  RatVector s;   // strictly positive distribution, length k+1
  RatMatrix M;   // strictly positive, column-stochastic
  RatVector mu;  // distribution
  Rational eta;  // > 0, shrinks v into the positivity margin
  Rational rho;  // in (0, 1], shrinks A into the positivity margin
  RatMatrix Q;   // (k+1) x k
  RatMatrix Qp;  // k x (k+1), Qp Q = I, Qp s = 0
};

/* eta = min(s) / (2 max|Qv|) (1 when Qv = 0) and
 * rho = min(1, min(s) / (2 max|Q A Qp|)) (1 when the product vanishes);
 * the factor two keeps every entry of M and mu strictly positive with room
 * to spare. All Embedding identities are verified before returning.
 * Throws ValidationError when s is not a strictly positive distribution. */
Embedding embed_lds(const RatVector& s, const RatMatrix& a, const RatVector& v);

/* Variant that keeps the dynamics unscaled (rho = 1), available when the
 * entries of Q a Qp are already dominated by min(s); the reduced system of
 * the resulting chain is then similar to a itself, not a scaled copy.
 * Throws ValidationError when the margin does not hold. */
Embedding embed_lds_unit_rho(const RatVector& s, const RatMatrix& a, const RatVector& v);

/* Full instance transformation: rewrites every (homogeneous) target into
 * the chart {y : 1^T (y - s) = 0}, keeps the specification verbatim, and
 * returns a valid stochastic instance whose characteristic word equals the
 * LDS instance's word letter for letter.
 * Throws HomogeneityError naming the first offending target atom when a
 * target mixes monomial degrees. */
reduce::StochasticInstance embed_instance(const LdsInstance& lds, const RatVector& s);

} // namespace distill::embed
