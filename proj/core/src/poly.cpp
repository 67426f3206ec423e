#include "distill/poly.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace distill {

RatPoly::RatPoly(RatVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rational& c) {
  return RatPoly(RatVector{c});
}

RatPoly RatPoly::monomial(const Rational& c, std::size_t n) {
  if (c == 0) return RatPoly();
  RatVector v(n + 1, Rational(0));
  v[n] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RatPoly::leading() const {
  assert(!is_zero());
  return coeffs_.back();
}

std::size_t RatPoly::trailing_zeros() const {
  std::size_t n = 0;
  while (n < coeffs_.size() && coeffs_[n] == 0) ++n;
  return is_zero() ? 0 : n;
}

RatPoly RatPoly::shift_down(std::size_t n) const {
  if (n == 0) return *this;
  if (trailing_zeros() < n)
    throw std::domain_error("shift_down: x^n does not divide polynomial");
  return RatPoly(RatVector(coeffs_.begin() + static_cast<long>(n), coeffs_.end()));
}

Rational RatPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string RatPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long d = degree(); d >= 0; --d) {
    const Rational c = coeff(static_cast<std::size_t>(d));
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    const Rational a = rat_abs(c);
    if (d == 0 || a != 1) out << a.str();
    if (d > 0) {
      out << var;
      if (d > 1) out << "^" << d;
    }
    first = false;
  }
  return out.str();
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
  RatVector c(std::max(a.coeffs().size(), b.coeffs().size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return RatPoly(std::move(c));
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatVector c(std::max(a.coeffs().size(), b.coeffs().size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return RatPoly(std::move(c));
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  RatVector c(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeff(i) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] += a.coeff(i) * b.coeff(j);
  }
  return RatPoly(std::move(c));
}

RatPoly poly_scale(const Rational& c, const RatPoly& a) {
  if (c == 0) return RatPoly();
  RatVector v = a.coeffs();
  for (auto& x : v) x *= c;
  return RatPoly(std::move(v));
}

RatPoly poly_pow(const RatPoly& a, std::size_t n) {
  RatPoly result = RatPoly::constant(1);
  RatPoly base = a;
  while (n > 0) {
    if (n & 1u) result = poly_mul(result, base);
    n >>= 1;
    if (n > 0) base = poly_mul(base, base);
  }
  return result;
}

PolyDivMod poly_divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
  RatVector rem = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  RatVector quot(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
  const Rational lead = b.leading();
  for (long d = a.degree(); d >= db; --d) {
    const Rational c = rem[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    const Rational f = c / lead;
    quot[static_cast<std::size_t>(d - db)] = f;
    for (long j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(d - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly poly_exact_div(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("poly_exact_div: nonzero remainder");
  return q;
}

bool poly_divides(const RatPoly& b, const RatPoly& a) {
  if (b.is_zero()) return a.is_zero();
  return poly_divmod(a, b).rem.is_zero();
}

} // namespace distill
