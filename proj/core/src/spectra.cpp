#include "distill/spectra.hpp"

#include "distill/errors.hpp"

#include <cstdlib>
#include <map>
#include <numeric>

namespace distill::spectra {

namespace {

RatPoly cyclotomic_memo(std::uint32_t d, std::map<std::uint32_t, RatPoly>& memo) {
  if (auto it = memo.find(d); it != memo.end()) return it->second;
  /* x^d - 1 = prod_{e | d} phi_e. */
  RatVector xd(d + 1, Rational(0));
  xd[0] = -1;
  xd[d] = 1;
  RatPoly p{RatVector(xd)};
  for (std::uint32_t e = 1; e <= d / 2; ++e)
    if (d % e == 0) p = poly_exact_div(p, cyclotomic_memo(e, memo));
  memo.emplace(d, p);
  return p;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

} // namespace

RatPoly cyclotomic(std::uint32_t d) {
  std::map<std::uint32_t, RatPoly> memo;
  return cyclotomic_memo(d, memo);
}

std::vector<std::uint32_t> candidate_orders(std::size_t k) {
  /* phi(d) >= sqrt(d/2), so phi(d) <= k forces d <= 2k^2. */
  std::vector<std::uint32_t> orders;
  if (k == 0) return orders;
  const std::uint64_t bound = 2 * static_cast<std::uint64_t>(k) * k;
  for (std::uint64_t d = 1; d <= bound; ++d)
    if (totient(d) <= k) orders.push_back(static_cast<std::uint32_t>(d));
  return orders;
}

SpectralProfile analyze(const RatMatrix& m) {
  SpectralProfile profile;
  profile.charpoly = charpoly(m);
  profile.zero_mult = profile.charpoly.trailing_zeros();
  RatPoly rest = profile.charpoly.shift_down(profile.zero_mult);

  const std::size_t k = m.rows() - profile.zero_mult;
  std::map<std::uint32_t, RatPoly> memo;
  std::uint64_t period = 1;
  std::size_t unit_dims = 0;
  for (std::uint32_t d : candidate_orders(k)) {
    const RatPoly phi = cyclotomic_memo(d, memo);
    std::size_t mult = 0;
    while (poly_divides(phi, rest)) {
      rest = poly_exact_div(rest, phi);
      ++mult;
    }
    if (mult > 0) {
      profile.cyclo_factors.push_back({d, mult});
      period = std::lcm<std::uint64_t>(period, d);
      unit_dims += mult * static_cast<std::size_t>(phi.degree());
    }
  }
  profile.period_c = period;
  profile.dyn_dim = m.rows() - profile.zero_mult - unit_dims;
  return profile;
}

std::size_t decay_search_cap(std::size_t k) {
  if (const char* env = std::getenv("DISTILL_MCAP")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 64 * std::max<std::size_t>(k, 1);
}

std::optional<DecayCertificate> decay_bound(const RatMatrix& a, const RatVector& v,
                                            const Rational& eps_sq) {
  const std::size_t k = a.rows();
  const std::size_t cap = decay_search_cap(k);

  DecayCertificate cert;
  cert.prefix_bound = vec_inf_norm(v);

  /* Walk powers of a once: the same sweep finds the contracting block power
   * and accumulates max_{r < m} ||a^r v||_inf. */
  RatMatrix power = RatMatrix::identity(k);
  RatVector image = v;
  bool found = false;
  for (std::size_t m = 1; m <= cap; ++m) {
    power = mat_mul(power, a);
    const Rational norm = induced_inf_norm(power);
    if (norm < 1) {
      cert.block_m = m;
      cert.block_norm = norm;
      found = true;
      break;
    }
    image = mat_apply(a, image);
    if (vec_inf_norm(image) > cert.prefix_bound) cert.prefix_bound = vec_inf_norm(image);
  }
  if (!found) return std::nullopt;

  /* Smallest q with dim * prefix_bound^2 * block_norm^(2q) < eps_sq; then
   * for n = qm + r >= n0,
   *   ||a^n v||_2^2 <= dim ||a^n v||_inf^2 <= dim (prefix_bound norm^q)^2.
   * All comparisons squared, so no square roots enter. */
  const Rational c2 = Rational(k) * cert.prefix_bound * cert.prefix_bound;
  const Rational step = cert.block_norm * cert.block_norm;
  Rational bound = c2;
  std::size_t q = 0;
  while (bound >= eps_sq) {
    bound *= step;
    ++q;
  }
  cert.n0 = q * cert.block_m;
  return cert;
}

bool StochasticSpectrumReport::all_ok() const {
  if (!unit_factor_present || !residual_decays) return false;
  for (const auto& oc : order_checks)
    if (!oc.ok) return false;
  return true;
}

StochasticSpectrumReport validate_stochastic_spectrum(const RatMatrix& m,
                                                      const SpectralProfile& profile) {
  if (!is_column_stochastic(m))
    throw ValidationError("validate_stochastic_spectrum: matrix is not column-stochastic");

  StochasticSpectrumReport report;

  RatPoly rest = profile.charpoly.shift_down(profile.zero_mult);
  std::map<std::uint32_t, RatPoly> memo;
  for (const auto& cf : profile.cyclo_factors) {
    const RatPoly phi = cyclotomic_memo(cf.order, memo);
    if (cf.order == 1) report.unit_factor_present = true;
    for (std::size_t i = 0; i < cf.multiplicity; ++i) rest = poly_exact_div(rest, phi);

    /* Unit-circle eigenvalues of a stochastic matrix are semisimple, so the
     * rational kernel of phi_d(m) must have dimension phi(d) * mult. */
    const std::size_t kd = kernel_basis(poly_eval_matrix(phi, m)).cols();
    const std::size_t expect = cf.multiplicity * static_cast<std::size_t>(phi.degree());
    report.order_checks.push_back({cf.order, cf.multiplicity, kd, kd == expect});
  }

  /* Residual spectrum must contract: witness on the companion dynamics. */
  if (rest.degree() <= 0) {
    report.residual_decays = true;
  } else {
    const RatMatrix comp = companion(rest);
    RatVector ones(comp.rows(), Rational(1));
    auto cert = decay_bound(comp, ones, Rational(1));
    report.residual_decays = cert.has_value();
    report.residual_certificate = cert;
  }
  return report;
}

} // namespace distill::spectra
