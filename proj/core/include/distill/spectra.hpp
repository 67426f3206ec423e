#pragma once

#include "distill/linalg.hpp"
#include "distill/matrix.hpp"
#include "distill/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace distill::spectra {

/* d-th cyclotomic polynomial, computed by exact recursive division of
 * x^d - 1 by the proper cyclotomic divisors. Memoized per call tree. */
RatPoly cyclotomic(std::uint32_t d);

/* All orders d whose primitive roots of unity can occur as eigenvalues of a
 * k x k rational matrix, i.e. phi(d) <= k, ascending. */
std::vector<std::uint32_t> candidate_orders(std::size_t k);

/* Where the eigenvalues of a rational matrix sit relative to the unit
 * circle, as far as exact arithmetic can see:
 *   zero_mult      multiplicity of the eigenvalue 0 (trailing x factors)
 *   cyclo_factors  (d, multiplicity) per cyclotomic factor detected
 *   period_c       lcm of the detected orders (1 when none)
 *   dyn_dim        count of remaining eigenvalues: nonzero, not roots of
 *                  unity; for stochastic matrices these are exactly the
 *                  strict-contraction directions
 *   charpoly       det(xI - m)
 */
struct CycloFactor {
  std::uint32_t order;
  std::size_t multiplicity;
};
struct SpectralProfile {
  RatPoly charpoly;
  std::size_t zero_mult = 0;
  std::vector<CycloFactor> cyclo_factors;
  std::uint64_t period_c = 1;
  std::size_t dyn_dim = 0;
};
SpectralProfile analyze(const RatMatrix& m);

/* Constructive witness that sup_n ||a^n v|| stays controlled and decays:
 * ||a^(qm + r) v||_2^2 <= dim * (prefix_bound * block_norm^q)^2, strictly
 * below eps_sq from n0 on. n0 is a multiple of block_m by construction. */
struct DecayCertificate {
  std::size_t block_m = 1;     // smallest m with induced_inf_norm(a^m) < 1
  Rational block_norm;         // that norm
  Rational prefix_bound;       // max_{0 <= r < m} ||a^r v||_inf
  std::size_t n0 = 0;
};

/* Search cap for block_m: env DISTILL_MCAP if set, else 64 * max(k, 1). */
std::size_t decay_search_cap(std::size_t k);

/* Finds the certificate, or nullopt when no power within the cap contracts
 * (i.e. we cannot witness that every eigenvalue has modulus < 1). */
std::optional<DecayCertificate> decay_bound(const RatMatrix& a, const RatVector& v,
                                            const Rational& eps_sq);

/* Spectrum sanity checks for a column-stochastic matrix:
 *  - the characteristic polynomial carries at least one factor x - 1,
 *  - each detected cyclotomic factor's kernel dim of phi_d(m) matches
 *    phi(d) * multiplicity (unit-circle eigenvalues are semisimple),
 *  - the residual factor (after x^zero_mult and the cyclotomic factors)
 *    admits a decay certificate on its companion matrix.
 * Throws ValidationError when m is not column-stochastic. */
struct StochasticSpectrumReport {
  bool unit_factor_present = false;
  struct OrderCheck {
    std::uint32_t order;
    std::size_t multiplicity;
    std::size_t kernel_dim;
    bool ok;
  };
  std::vector<OrderCheck> order_checks;
  bool residual_decays = false;
  std::optional<DecayCertificate> residual_certificate;
  [[nodiscard]] bool all_ok() const;
};
StochasticSpectrumReport validate_stochastic_spectrum(const RatMatrix& m,
                                                      const SpectralProfile& profile);

} // namespace distill::spectra
