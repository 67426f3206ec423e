#include "distill/rational.hpp"

#include "distill/errors.hpp"

#include <cctype>

namespace distill {

std::string rat_to_string(const Rational& x) {
  return x.str();
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

} // namespace

Rational parse_rational(const std::string& text, const std::string& where) {
  const std::string ctx = where.empty() ? "" : " at " + where;
  const auto fail = [&]() -> Rational {
    throw ParseError("malformed rational \"" + text + "\"" + ctx +
                     " (expected -?digits or -?digits/digits with nonzero denominator)");
  };

  const std::size_t slash = text.find('/');
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);

  std::size_t num_start = 0;
  if (!num.empty() && num[0] == '-') num_start = 1;
  if (!all_digits(num, num_start, num.size())) return fail();
  if (!all_digits(den, 0, den.size())) return fail();

  Integer p(num), q(den);
  if (q == 0)
    throw ParseError("zero denominator in rational \"" + text + "\"" + ctx);
  return Rational(p, q);
}

RatVector vec_add(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector vec_sub(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector vec_scale(const Rational& c, const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Rational vec_dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational vec_inf_norm(const RatVector& a) {
  Rational m = 0;
  for (const auto& x : a)
    if (rat_abs(x) > m) m = rat_abs(x);
  return m;
}

Rational vec_sq_norm(const RatVector& a) {
  Rational s = 0;
  for (const auto& x : a) s += x * x;
  return s;
}

bool vec_is_zero(const RatVector& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

RatVector canonical_integer_direction(const RatVector& v) {
  Integer lcm_den = 1;
  for (const auto& x : v)
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  Integer gcd_num = 0;
  for (const auto& x : v)
    if (x != 0)
      gcd_num = boost::multiprecision::gcd(gcd_num,
                                           Integer(numerator(x) * (lcm_den / denominator(x))));
  if (gcd_num == 0) return v;
  Rational scale(lcm_den, gcd_num);
  for (const auto& x : v)
    if (x != 0) {
      if (x * scale < 0) scale = -scale;
      break;
    }
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
  return out;
}

} // namespace distill
