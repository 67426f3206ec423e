#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace distill {

/* Exact rational scalar. GMP keeps values canonical (gcd(p,q) = 1, q > 0),
 * so equality is structural and arithmetic never drifts. */
using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;

using RatVector = std::vector<Rational>;

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

/* Canonical text form: "p" when q = 1, otherwise "p/q". */
std::string rat_to_string(const Rational& x);

/* Strict inverse of rat_to_string, also accepting an explicit "/1".
 * Grammar: -?digits(/digits)?  with a nonzero denominator. Never hands an
 * unchecked string to GMP (mpq aborts on zero denominators). Throws
 * ParseError, with `where` naming the offending document location. */
Rational parse_rational(const std::string& text, const std::string& where = "");

/* Elementwise vector helpers used throughout the reduction pipeline. */
RatVector vec_add(const RatVector& a, const RatVector& b);
RatVector vec_sub(const RatVector& a, const RatVector& b);
RatVector vec_scale(const Rational& c, const RatVector& a);
Rational  vec_dot(const RatVector& a, const RatVector& b);
Rational  vec_inf_norm(const RatVector& a);     // max_i |a_i|
Rational  vec_sq_norm(const RatVector& a);      // sum_i a_i^2
bool      vec_is_zero(const RatVector& a);

/* The same ray scaled to coprime integer entries with the first nonzero
 * entry positive; zero vectors pass through. Canonical form for kernel
 * vectors and hull rows. */
RatVector canonical_integer_direction(const RatVector& v);

} // namespace distill
