#pragma once

/* Deterministic, seed-addressed generators for the property and acceptance
 * suites. Instances are built to plant spectral structure exactly — zero
 * eigenvalues through duplicated columns, unit-circle periods through
 * cyclically structured positive blocks, strict contractions through the
 * recurrent block's mixing — then filtered against spectra::analyze so every
 * returned instance provably carries the planted (ell, c). */

#include "distill/automata.hpp"
#include "distill/embed.hpp"
#include "distill/errors.hpp"
#include "distill/matrix.hpp"
#include "distill/rational.hpp"
#include "distill/reduce.hpp"
#include "distill/semialg.hpp"
#include "distill/spectra.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace testsupport {

using distill::RatMatrix;
using distill::Rational;
using distill::RatVector;
namespace aut = distill::automata;
namespace sa = distill::semialg;

struct TestRng {
  std::mt19937_64 g;
  explicit TestRng(std::uint64_t seed) : g(seed) {}
  /* Uniform in [0, n). */
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(g);
  }
  /* Uniform in [lo, hi]. */
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  /* True with probability num/den. */
  bool chance(long num, long den) { return range(0, den - 1) < num; }
};

/* ------------------------------------------------------------- matrices --- */

/* Irreducible column-stochastic matrix on m >= c states whose unit-circle
 * spectrum is exactly the c-th roots of unity: states are classed by
 * residue mod c, every transition moves class r to class r+1 with a strictly
 * positive random weight. */
inline RatMatrix random_periodic_stochastic(TestRng& rng, std::size_t m, std::size_t c) {
  RatMatrix d(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t next_class = (j % c + 1) % c;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m; ++i)
      if (i % c == next_class) rows.push_back(i);
    long total = 0;
    std::vector<long> weights(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      weights[t] = rng.range(1, 9);
      total += weights[t];
    }
    for (std::size_t t = 0; t < rows.size(); ++t)
      d.at(rows[t], j) = Rational(weights[t], total);
  }
  return d;
}

/* Appends `extra` transient states whose columns duplicate recurrent columns
 * (planting exactly that many zero eigenvalues when the base is nonsingular),
 * then conjugates by a random permutation so the block structure is hidden. */
inline RatMatrix duplicate_extend(TestRng& rng, const RatMatrix& base, std::size_t extra) {
  const std::size_t m = base.rows();
  const std::size_t k = m + extra;
  RatMatrix big(k, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) big.at(i, j) = base.at(i, j);
  for (std::size_t t = 0; t < extra; ++t) {
    const std::size_t src = rng.index(m);
    for (std::size_t i = 0; i < m; ++i) big.at(i, m + t) = base.at(i, src);
  }
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  for (std::size_t i = k; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
  RatMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.at(perm[i], perm[j]) = big.at(i, j);
  return out;
}

inline RatVector random_distribution(TestRng& rng, std::size_t k) {
  std::vector<long> weights(k);
  long total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    weights[i] = rng.range(0, 9);
    total += weights[i];
  }
  if (total == 0) {
    weights[rng.index(k)] = 1;
    total = 1;
  }
  RatVector mu(k);
  for (std::size_t i = 0; i < k; ++i) mu[i] = Rational(weights[i], total);
  return mu;
}

/* --------------------------------------------------------------- targets -- */

/* Random polynomial of total degree <= max_degree with small integer
 * coefficients; at least one nonconstant term. */
inline sa::MultiPoly random_poly(TestRng& rng, std::size_t k, long max_degree) {
  sa::MultiPoly p(k);
  const std::size_t terms = 1 + rng.index(3);
  for (std::size_t t = 0; t < terms; ++t) {
    sa::MultiPoly::Exponents e(k, 0);
    const long deg = rng.range(1, max_degree);
    for (long d = 0; d < deg; ++d) e[rng.index(k)] += 1;
    long coeff = rng.range(-3, 3);
    if (coeff == 0) coeff = 1;
    p.add_term(e, Rational(coeff, rng.range(1, 2)));
  }
  if (rng.chance(1, 2))
    p.add_term(sa::MultiPoly::Exponents(k, 0), Rational(rng.range(-2, 2), rng.range(1, 3)));
  if (p.is_zero()) p = sa::MultiPoly::variable(k, 0);
  return p;
}

inline sa::Rel random_rel(TestRng& rng) {
  constexpr sa::Rel rels[] = {sa::Rel::lt, sa::Rel::le, sa::Rel::eq,
                              sa::Rel::ne, sa::Rel::ge, sa::Rel::gt};
  return rels[rng.index(6)];
}

inline sa::SemialgebraicSet random_target(TestRng& rng, std::size_t k, long max_degree) {
  sa::SemialgebraicSet t;
  t.variables = k;
  sa::SetNodePtr first = sa::make_atom(random_poly(rng, k, max_degree), random_rel(rng));
  if (rng.chance(1, 4)) {
    sa::SetNodePtr second = sa::make_atom(random_poly(rng, k, max_degree), random_rel(rng));
    t.root = rng.chance(1, 2) ? sa::make_and({first, second}) : sa::make_or({first, second});
  } else {
    t.root = first;
  }
  return t;
}

/* A target the chain provably never meets: an affine flat {x_j = level}
 * with level >= 2, while every reachable point is a distribution. */
inline sa::SemialgebraicSet unreachable_flat_target(TestRng& rng, std::size_t k, long level) {
  sa::MultiPoly p = sa::MultiPoly::variable(k, rng.index(k));
  p.add_term(sa::MultiPoly::Exponents(k, 0), Rational(-level));
  sa::SemialgebraicSet t;
  t.variables = k;
  t.root = sa::make_atom(p, sa::Rel::eq);
  return t;
}

/* -------------------------------------------------------------- automata -- */

inline aut::MullerAutomaton random_automaton(TestRng& rng, std::size_t max_states,
                                             std::uint32_t num_targets) {
  const auto n = static_cast<std::uint32_t>(1 + rng.index(max_states));
  const std::uint32_t letters = 1u << num_targets;
  std::vector<std::vector<std::uint32_t>> delta(n);
  for (std::uint32_t q = 0; q < n; ++q)
    for (std::uint32_t l = 0; l < letters; ++l)
      delta[q].push_back(static_cast<std::uint32_t>(rng.index(n)));
  std::vector<aut::StateSet> family;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!rng.chance(1, 3)) continue;
    aut::StateSet s;
    for (std::uint32_t q = 0; q < n; ++q)
      if (mask & (1u << q)) s.push_back(q);
    family.push_back(std::move(s));
  }
  return aut::make_plain(n, num_targets, static_cast<std::uint32_t>(rng.index(n)),
                         std::move(delta), std::move(family));
}

/* --------------------------------------------------------------- corpus --- */

struct PlantedInstance {
  distill::reduce::StochasticInstance inst;
  std::size_t ell = 0;
  std::size_t c = 1;
  distill::reduce::ReducedInstance red;
};

/* Stochastic instance of order 3..6 with planted ell in {0,1,2} and
 * c in {1,2,3}, two random degree-<=2 targets, and a small random Muller
 * specification. The reduction is run as part of the filter, so the returned
 * instance always carries a full certificate with a moderate n0. */
inline PlantedInstance corpus_instance(std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    TestRng rng(seed * 1000003ULL + attempt * 7919ULL + 17ULL);
    const std::size_t ell = rng.index(3);
    const std::size_t k = 3 + rng.index(4);
    const std::size_t m = k - ell;
    if (m < 1) continue;
    const std::size_t c = 1 + rng.index(std::min<std::size_t>(3, m));

    PlantedInstance out;
    out.ell = ell;
    out.c = c;
    out.inst.M = duplicate_extend(rng, random_periodic_stochastic(rng, m, c), ell);
    const distill::spectra::SpectralProfile profile = distill::spectra::analyze(out.inst.M);
    if (profile.zero_mult != ell || profile.period_c != c) continue;

    out.inst.mu = random_distribution(rng, k);
    out.inst.targets.push_back(random_target(rng, k, 2));
    out.inst.targets.push_back(random_target(rng, k, 2));
    out.inst.spec = random_automaton(rng, 3, 2);
    try {
      out.red = distill::reduce::reduce_full(out.inst);
    } catch (const distill::ReductionError&) {
      continue;  // decay cap or alphabet cap: plant again
    }
    if (out.red.n0 > 200) continue;  // keep acceptance windows cheap
    return out;
  }
  throw std::runtime_error("corpus generation exhausted its attempts");
}

/* Instance whose dynamical dimension is exactly zero: the recurrent block is
 * a bare c-cycle permutation, so after the ell-step prefix the trajectory is
 * purely periodic. */
inline PlantedInstance dyn0_instance(std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    TestRng rng(seed * 998244353ULL + attempt * 6151ULL + 5ULL);
    const std::size_t ell = rng.index(3);
    const std::size_t c = 1 + rng.index(4);
    const std::size_t k = ell + c;

    RatMatrix cycle(c, c);
    for (std::size_t j = 0; j < c; ++j) cycle.at((j + 1) % c, j) = 1;

    PlantedInstance out;
    out.ell = ell;
    out.c = c;
    out.inst.M = duplicate_extend(rng, cycle, ell);
    const distill::spectra::SpectralProfile profile = distill::spectra::analyze(out.inst.M);
    if (profile.zero_mult != ell || profile.period_c != c || profile.dyn_dim != 0) continue;

    out.inst.mu = random_distribution(rng, k);
    out.inst.targets.push_back(random_target(rng, k, rng.chance(1, 2) ? 1 : 2));
    out.inst.targets.push_back(random_target(rng, k, 1));
    out.inst.spec = random_automaton(rng, 3, 2);
    try {
      out.red = distill::reduce::reduce_full(out.inst);
    } catch (const distill::ReductionError&) {
      continue;
    }
    return out;
  }
  throw std::runtime_error("dyn0 generation exhausted its attempts");
}

/* Corpus instance whose targets are affine flats no distribution can reach;
 * stage three certifies every phase copy empty, so the fragment decision is
 * complete regardless of the dynamical dimension. */
inline PlantedInstance empty_target_instance(std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    TestRng rng(seed * 786433ULL + attempt * 2927ULL + 11ULL);
    const std::size_t ell = rng.index(3);
    const std::size_t k = 3 + rng.index(4);
    const std::size_t m = k - ell;
    if (m < 1) continue;
    const std::size_t c = 1 + rng.index(std::min<std::size_t>(3, m));

    PlantedInstance out;
    out.ell = ell;
    out.c = c;
    out.inst.M = duplicate_extend(rng, random_periodic_stochastic(rng, m, c), ell);
    const distill::spectra::SpectralProfile profile = distill::spectra::analyze(out.inst.M);
    if (profile.zero_mult != ell || profile.period_c != c) continue;

    out.inst.mu = random_distribution(rng, k);
    out.inst.targets.push_back(unreachable_flat_target(rng, k, 2));
    out.inst.targets.push_back(unreachable_flat_target(rng, k, 3));
    out.inst.spec = random_automaton(rng, 3, 2);
    try {
      out.red = distill::reduce::reduce_full(out.inst);
    } catch (const distill::ReductionError&) {
      continue;
    }
    if (out.red.n0 > 200) continue;
    return out;
  }
  throw std::runtime_error("empty-target generation exhausted its attempts");
}

/* ------------------------------------------------- planted exact spectra -- */

/* Column-stochastic matrix whose spectrum is exactly {1} U {planted lambdas}
 * U {0 x zeros}: the lambdas are distinct nonzero grid rationals with
 * pairwise separation and unit-circle margin far above the acceptance bands,
 * realised by the unit-rho chart embedding (similarity, so the spectrum is
 * exact); zeros are planted by duplicated columns. */
inline RatMatrix planted_spectrum_matrix(std::uint64_t seed, std::size_t* out_dyn) {
  TestRng rng(seed * 611953ULL + 29ULL);
  const std::size_t j = 1 + rng.index(3);
  std::set<long> nums;
  while (nums.size() < j) {
    const long t = rng.range(-62, 62);
    if (t != 0) nums.insert(t);
  }
  const std::size_t zeros = rng.index(3);

  for (int halving = 0; halving < 4; ++halving) {
    const long denom = 64L << halving;
    RatMatrix a(j, j);
    std::size_t i = 0;
    for (long t : nums) a.at(i, i) = Rational(t, denom), ++i;
    RatVector s(j + 1, Rational(1, static_cast<long>(j + 1)));
    RatVector v(j, Rational(1));
    try {
      const distill::embed::Embedding emb = distill::embed::embed_lds_unit_rho(s, a, v);
      if (out_dyn) *out_dyn = j;
      return duplicate_extend(rng, emb.M, zeros);
    } catch (const distill::ValidationError&) {
      continue;  // chart margin too tight: shrink the spectrum and retry
    }
  }
  return planted_spectrum_matrix(seed + 104729ULL, out_dyn);
}

/* ------------------------------------------------------------ LDS corpus -- */

/* Random LDS instance with homogeneous targets (a single shared total degree
 * per polynomial), suitable for the chart embedding. */
inline distill::embed::LdsInstance random_homogeneous_lds(std::uint64_t seed) {
  TestRng rng(seed * 423793ULL + 3ULL);
  const std::size_t k = 1 + rng.index(4);
  distill::embed::LdsInstance lds;
  lds.A = RatMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      lds.A.at(i, l) = Rational(rng.range(-2, 2), rng.range(1, 3));
  lds.v.resize(k);
  for (std::size_t i = 0; i < k; ++i) lds.v[i] = Rational(rng.range(-3, 3));

  for (int t = 0; t < 2; ++t) {
    const long deg = rng.range(1, 2);
    sa::MultiPoly p(k);
    const std::size_t terms = 1 + rng.index(3);
    for (std::size_t u = 0; u < terms; ++u) {
      sa::MultiPoly::Exponents e(k, 0);
      for (long d = 0; d < deg; ++d) e[rng.index(k)] += 1;
      long coeff = rng.range(-3, 3);
      if (coeff == 0) coeff = 2;
      p.add_term(e, Rational(coeff));
    }
    sa::SemialgebraicSet target;
    target.variables = k;
    target.root = sa::make_atom(p, random_rel(rng));
    lds.targets.push_back(std::move(target));
  }
  lds.spec = random_automaton(rng, 3, 2);
  return lds;
}

inline RatVector random_positive_distribution(TestRng& rng, std::size_t k) {
  std::vector<long> weights(k);
  long total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    weights[i] = rng.range(1, 9);
    total += weights[i];
  }
  RatVector s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = Rational(weights[i], total);
  return s;
}

} // namespace testsupport
