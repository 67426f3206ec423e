#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distill/errors.hpp"
#include "distill/linalg.hpp"
#include "distill/spectra.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <cstdlib>

using namespace distill;
using spectra::analyze;

namespace {

const RatMatrix kMa{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
const RatMatrix kMb{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
const RatMatrix kMc{{Rational(3, 4), Rational(1, 4)}, {Rational(1, 4), Rational(3, 4)}};
const RatMatrix kMd{{Rational(0), Rational(1, 2), Rational(1, 2)},
                    {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                    {Rational(1, 2), Rational(1, 4), Rational(1, 4)}};

} // namespace

TEST_CASE("cyclotomic polynomials match the frozen table") {
  for (std::uint32_t d : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u})
    CHECK(spectra::cyclotomic(d) == testsupport::cyclotomic_table(d));
}

TEST_CASE("candidate orders are exactly the totient-bounded ones") {
  CHECK(spectra::candidate_orders(1) == std::vector<std::uint32_t>{1, 2});
  CHECK(spectra::candidate_orders(2) == std::vector<std::uint32_t>{1, 2, 3, 4, 6});
  CHECK(spectra::candidate_orders(4) ==
        std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 8, 10, 12});
  // phi(d) <= 6 additionally admits 7, 9, 14, 18.
  CHECK(spectra::candidate_orders(6) ==
        std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18});
}

TEST_CASE("spectral profiles of the worked matrices") {
  const spectra::SpectralProfile pa = analyze(kMa);
  CHECK(pa.zero_mult == 1);
  CHECK(pa.period_c == 1);
  CHECK(pa.dyn_dim == 0);
  REQUIRE(pa.cyclo_factors.size() == 1);
  CHECK(pa.cyclo_factors[0].order == 1);
  CHECK(pa.cyclo_factors[0].multiplicity == 1);

  const spectra::SpectralProfile pb = analyze(kMb);
  CHECK(pb.zero_mult == 0);
  CHECK(pb.period_c == 2);
  CHECK(pb.dyn_dim == 0);
  REQUIRE(pb.cyclo_factors.size() == 2);
  CHECK(pb.cyclo_factors[0].order == 1);
  CHECK(pb.cyclo_factors[1].order == 2);

  const spectra::SpectralProfile pc = analyze(kMc);
  CHECK(pc.zero_mult == 0);
  CHECK(pc.period_c == 1);
  CHECK(pc.dyn_dim == 1);

  const spectra::SpectralProfile pd = analyze(kMd);
  CHECK(pd.charpoly ==
        RatPoly({Rational(0), Rational(-1, 2), Rational(-1, 2), Rational(1)}));
  CHECK(pd.zero_mult == 1);
  CHECK(pd.period_c == 1);
  CHECK(pd.dyn_dim == 1);
}

TEST_CASE("powering by the period kills the roots of unity") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const testsupport::PlantedInstance pi = testsupport::corpus_instance(seed);
    const spectra::SpectralProfile before = analyze(pi.inst.M);
    const RatMatrix powered = mat_pow(pi.inst.M, before.period_c);
    const spectra::SpectralProfile after = analyze(powered);
    CHECK(after.zero_mult == before.zero_mult);
    CHECK(after.period_c == 1);
    CHECK(after.dyn_dim == before.dyn_dim);
  }
}

TEST_CASE("resultant identity for powered spectra") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const testsupport::PlantedInstance pi = testsupport::corpus_instance(seed);
    const RatPoly p = analyze(pi.inst.M).charpoly;
    for (std::size_t c = 1; c <= 4; ++c) {
      const RatPoly lhs = charpoly(mat_pow(pi.inst.M, c));
      const RatPoly res = testsupport::sylvester_resultant_power(p, c);
      const bool matches =
          lhs == res || lhs == poly_scale(Rational(-1), res);
      CHECK(matches);
    }
  }
}

TEST_CASE("decay certificate worked examples") {
  const RatMatrix half{{Rational(1, 2)}};
  const auto cert = spectra::decay_bound(half, RatVector{Rational(1)}, Rational(1, 100));
  REQUIRE(cert.has_value());
  CHECK(cert->block_m == 1);
  CHECK(cert->block_norm == Rational(1, 2));
  CHECK(cert->n0 == 4);

  const RatMatrix nil{{Rational(0)}};
  const auto nil_cert = spectra::decay_bound(nil, RatVector{Rational(7)}, Rational(1, 5));
  REQUIRE(nil_cert.has_value());
  CHECK(nil_cert->n0 <= 1);

  // Upper triangular with a nontrivial Jordan-like mixing term: the first
  // power with contracting row sums is a^2 (rows of a^2 sum to 3/4 and 1/4).
  const RatMatrix tri{{Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1, 2)}};
  const auto tri_cert =
      spectra::decay_bound(tri, RatVector{Rational(1), Rational(1)}, Rational(1));
  REQUIRE(tri_cert.has_value());
  CHECK(tri_cert->block_m == 2);
  CHECK(tri_cert->block_norm == Rational(3, 4));
  CHECK(tri_cert->n0 == 4);
  CHECK(tri_cert->n0 % tri_cert->block_m == 0);
}

TEST_CASE("decay certificates guarantee the squared-norm bound") {
  testsupport::TestRng rng(77ULL);
  for (int it = 0; it < 10; ++it) {
    const std::size_t n = 1 + rng.index(3);
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(rng.range(-1, 1), 4);
    RatVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Rational(rng.range(-3, 3));
    const Rational eps_sq(1, 7);
    const auto cert = spectra::decay_bound(a, v, eps_sq);
    REQUIRE(cert.has_value());
    RatVector x = mat_apply(mat_pow(a, cert->n0), v);
    for (int step = 0; step < 20; ++step) {
      CHECK(vec_sq_norm(x) < eps_sq);
      x = mat_apply(a, x);
    }
  }
}

TEST_CASE("search cap honours the environment override") {
  CHECK(spectra::decay_search_cap(3) == 192);
  CHECK(spectra::decay_search_cap(0) == 64);
  setenv("DISTILL_MCAP", "7", 1);
  CHECK(spectra::decay_search_cap(3) == 7);
  // A non-contracting matrix never certifies; the cap makes that finite.
  const RatMatrix one{{Rational(1)}};
  CHECK_FALSE(spectra::decay_bound(one, RatVector{Rational(1)}, Rational(1)).has_value());
  unsetenv("DISTILL_MCAP");
}

TEST_CASE("stochastic spectrum validation") {
  CHECK(spectra::validate_stochastic_spectrum(kMb, analyze(kMb)).all_ok());

  const spectra::StochasticSpectrumReport rc =
      spectra::validate_stochastic_spectrum(kMc, analyze(kMc));
  CHECK(rc.all_ok());
  CHECK(rc.unit_factor_present);
  REQUIRE(rc.residual_certificate.has_value());
  CHECK(rc.residual_decays);

  const RatMatrix bad{{Rational(2), Rational(0)}, {Rational(0), Rational(2)}};
  CHECK_THROWS_AS(spectra::validate_stochastic_spectrum(bad, analyze(bad)),
                  ValidationError);

  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const testsupport::PlantedInstance pi = testsupport::corpus_instance(seed);
    CHECK(spectra::validate_stochastic_spectrum(pi.inst.M, analyze(pi.inst.M)).all_ok());
  }
}

TEST_CASE("dynamical dimension agrees with the floating-point oracle") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    std::size_t planted = 0;
    const RatMatrix m = testsupport::planted_spectrum_matrix(seed, &planted);
    const spectra::SpectralProfile profile = analyze(m);
    const testsupport::EigenBandCounts counts = testsupport::eigen_band_counts(m);
    CHECK(profile.dyn_dim == planted);
    CHECK(counts.dyn == planted);
    CHECK(profile.zero_mult == counts.zeros);
  }
}
