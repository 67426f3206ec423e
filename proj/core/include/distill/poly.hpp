#pragma once

#include "distill/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace distill {

/* Univariate rational polynomial, coefficients lowest-degree first.
 * The zero polynomial has an empty coefficient vector and degree() < 0;
 * everything else is kept trimmed (nonzero leading coefficient). */
class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(RatVector coeffs);
  static RatPoly constant(const Rational& c);
  /* x^n with coefficient c. */
  static RatPoly monomial(const Rational& c, std::size_t n);

  [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const RatVector& coeffs() const { return coeffs_; }
  [[nodiscard]] Rational coeff(std::size_t n) const {
    return n < coeffs_.size() ? coeffs_[n] : Rational(0);
  }
  [[nodiscard]] Rational leading() const;
  [[nodiscard]] bool is_monic() const { return !is_zero() && leading() == 1; }

  bool operator==(const RatPoly& o) const = default;

  /* Number of leading zero roots, i.e. the multiplicity of x | p. */
  [[nodiscard]] std::size_t trailing_zeros() const;
  /* p / x^n; requires x^n | p. */
  [[nodiscard]] RatPoly shift_down(std::size_t n) const;

  [[nodiscard]] Rational eval(const Rational& x) const;

  [[nodiscard]] std::string to_string(const std::string& var = "x") const;

private:
  RatVector coeffs_;
  void trim();
};

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const Rational& c, const RatPoly& a);
RatPoly poly_pow(const RatPoly& a, std::size_t n);

/* Euclidean division a = q*b + r with deg r < deg b; b must be nonzero. */
struct PolyDivMod {
  RatPoly quot, rem;
};
PolyDivMod poly_divmod(const RatPoly& a, const RatPoly& b);

/* Quotient when b exactly divides a; throws std::domain_error otherwise. */
RatPoly poly_exact_div(const RatPoly& a, const RatPoly& b);

bool poly_divides(const RatPoly& b, const RatPoly& a);

} // namespace distill
