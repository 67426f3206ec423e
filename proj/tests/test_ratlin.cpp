#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distill/errors.hpp"
#include "distill/linalg.hpp"
#include "distill/matrix.hpp"
#include "distill/poly.hpp"
#include "distill/rational.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace distill;

TEST_CASE("rational text round trip") {
  CHECK(rat_to_string(Rational(3, 4)) == "3/4");
  CHECK(rat_to_string(Rational(-6, 8)) == "-3/4");
  CHECK(rat_to_string(Rational(5)) == "5");
  CHECK(rat_to_string(Rational(0)) == "0");
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("7/1") == Rational(7));
  CHECK(parse_rational("2/4") == Rational(1, 2));  // normalised on entry
}

TEST_CASE("rational parse rejects malformed text") {
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
  CHECK_THROWS_AS(parse_rational(" 1/2"), ParseError);
}

TEST_CASE("vector helpers") {
  const RatVector a{Rational(1), Rational(-2), Rational(1, 2)};
  const RatVector b{Rational(3), Rational(1), Rational(-1, 2)};
  CHECK(vec_add(a, b) == RatVector{Rational(4), Rational(-1), Rational(0)});
  CHECK(vec_sub(a, b) == RatVector{Rational(-2), Rational(-3), Rational(1)});
  CHECK(vec_scale(Rational(2), a) == RatVector{Rational(2), Rational(-4), Rational(1)});
  CHECK(vec_dot(a, b) == Rational(3) - 2 - Rational(1, 4));
  CHECK(vec_inf_norm(a) == Rational(2));
  CHECK(vec_sq_norm(a) == Rational(1) + 4 + Rational(1, 4));
  CHECK(vec_is_zero(RatVector{Rational(0), Rational(0)}));
  CHECK_FALSE(vec_is_zero(a));
}

TEST_CASE("canonical integer direction") {
  const RatVector v{Rational(-1, 2), Rational(1, 3), Rational(0)};
  CHECK(canonical_integer_direction(v) == RatVector{Rational(3), Rational(-2), Rational(0)});
  const RatVector zero{Rational(0), Rational(0)};
  CHECK(canonical_integer_direction(zero) == zero);
  CHECK(canonical_integer_direction(RatVector{Rational(0), Rational(-5, 7)}) ==
        RatVector{Rational(0), Rational(1)});
}

TEST_CASE("matrix basics and stochastic checks") {
  const RatMatrix mc{{Rational(3, 4), Rational(1, 4)}, {Rational(1, 4), Rational(3, 4)}};
  CHECK(is_column_stochastic(mc));
  CHECK(is_distribution(RatVector{Rational(1, 3), Rational(2, 3)}));
  CHECK_FALSE(is_distribution(RatVector{Rational(1, 3), Rational(1, 3)}));
  CHECK_FALSE(is_column_stochastic(RatMatrix{{Rational(2), Rational(0)},
                                             {Rational(-1), Rational(1)}}));
  CHECK(mat_apply(mc, RatVector{Rational(1), Rational(0)}) ==
        RatVector{Rational(3, 4), Rational(1, 4)});
  CHECK(mc.transpose() == mc);
  CHECK(mat_pow(mc, 0) == RatMatrix::identity(2));

  const RatMatrix swap{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK(mat_pow(swap, 2) == RatMatrix::identity(2));
  CHECK(mat_pow(swap, 7) == swap);
  CHECK(induced_inf_norm(mc) == Rational(1));
  CHECK(max_abs_entry(mc) == Rational(3, 4));
}

TEST_CASE("zero-dimensional shapes are first-class") {
  const RatMatrix empty(0, 0);
  CHECK(mat_pow(empty, 5) == empty);
  CHECK(charpoly(empty) == RatPoly::constant(Rational(1)));
  CHECK(induced_inf_norm(empty) == Rational(0));
  CHECK(mat_apply(empty, RatVector{}).empty());
  CHECK(rank(empty) == 0);
}

TEST_CASE("polynomial arithmetic") {
  const RatPoly p({Rational(-1), Rational(1)});          // x - 1
  const RatPoly q({Rational(1), Rational(1)});           // x + 1
  CHECK(poly_mul(p, q) == RatPoly({Rational(-1), Rational(0), Rational(1)}));
  CHECK(poly_add(p, q) == RatPoly({Rational(0), Rational(2)}));
  CHECK(poly_pow(p, 2) == RatPoly({Rational(1), Rational(-2), Rational(1)}));
  CHECK(p.eval(Rational(3)) == Rational(2));
  CHECK(poly_divides(p, poly_mul(p, q)));
  CHECK_FALSE(poly_divides(p, q));
  CHECK(poly_exact_div(poly_mul(p, q), q) == p);

  const RatPoly cubic({Rational(0), Rational(0), Rational(-1, 2), Rational(1)});
  CHECK(cubic.trailing_zeros() == 2);
  CHECK(cubic.shift_down(2) == RatPoly({Rational(-1, 2), Rational(1)}));
  CHECK(cubic.to_string() == "x^3 - 1/2x^2");

  const PolyDivMod dm = poly_divmod(RatPoly({Rational(1), Rational(0), Rational(1)}), q);
  CHECK(poly_add(poly_mul(dm.quot, q), dm.rem) ==
        RatPoly({Rational(1), Rational(0), Rational(1)}));
  CHECK(dm.rem.degree() < q.degree());
}

TEST_CASE("bareiss echelon and rank") {
  const RatMatrix a{{Rational(1), Rational(2), Rational(3)},
                    {Rational(2), Rational(4), Rational(6)},
                    {Rational(0), Rational(1), Rational(1)}};
  const Echelon e = bareiss_echelon(a);
  CHECK(e.pivot_cols == std::vector<std::size_t>{0, 1});
  CHECK(rank(a) == 2);
  CHECK(rank(RatMatrix::identity(4)) == 4);
}

TEST_CASE("kernel basis is canonical") {
  // Columns 1 and 2 of M_d are equal, so (0, 1, -1) spans the kernel.
  const RatMatrix md{{Rational(0), Rational(1, 2), Rational(1, 2)},
                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)}};
  const RatMatrix ker = kernel_basis(md);
  REQUIRE(ker.cols() == 1);
  CHECK(ker.col(0) == RatVector{Rational(0), Rational(1), Rational(-1)});

  // Kernel columns actually annihilate and are integer-canonical.
  const RatMatrix a{{Rational(1, 2), Rational(1), Rational(0), Rational(-1)},
                    {Rational(0), Rational(0), Rational(1), Rational(1)}};
  const RatMatrix k = kernel_basis(a);
  REQUIRE(k.cols() == 2);
  CHECK(mat_mul(a, k).is_zero());
}

TEST_CASE("column space basis takes leftmost pivots") {
  const RatMatrix md{{Rational(0), Rational(1, 2), Rational(1, 2)},
                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)}};
  const ColumnSpace cs = column_space_basis(md);
  CHECK(cs.indices == std::vector<std::size_t>{0, 1});
  CHECK(cs.basis.col(0) == md.col(0));

  const RatMatrix mc_minus_i{{Rational(-1, 4), Rational(1, 4)},
                             {Rational(1, 4), Rational(-1, 4)}};
  const ColumnSpace cs2 = column_space_basis(mc_minus_i);
  CHECK(cs2.indices == std::vector<std::size_t>{0});
  CHECK(cs2.basis.col(0) == RatVector{Rational(-1, 4), Rational(1, 4)});
}

TEST_CASE("solve and inverse") {
  const RatMatrix r{{Rational(1), Rational(-1, 4)}, {Rational(1), Rational(1, 4)}};
  const auto inv = inverse(r);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(r, *inv) == RatMatrix::identity(2));
  const auto x = solve(r, RatVector{Rational(1), Rational(0)});
  REQUIRE(x.has_value());
  CHECK(mat_apply(r, *x) == RatVector{Rational(1), Rational(0)});
  CHECK(*x == RatVector{Rational(1, 2), Rational(-2)});

  // Inconsistent system: x + y = 0 and x + y = 1.
  const RatMatrix sing{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  CHECK_FALSE(solve(sing, RatVector{Rational(0), Rational(1)}).has_value());
  CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("charpoly matches the cofactor-expansion oracle") {
  const RatMatrix mc{{Rational(3, 4), Rational(1, 4)}, {Rational(1, 4), Rational(3, 4)}};
  CHECK(charpoly(mc) == testsupport::laplace_charpoly(mc));
  CHECK(charpoly(mc) == RatPoly({Rational(1, 2), Rational(-3, 2), Rational(1)}));

  const RatMatrix md{{Rational(0), Rational(1, 2), Rational(1, 2)},
                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)}};
  CHECK(charpoly(md) == testsupport::laplace_charpoly(md));
  CHECK(charpoly(md) == RatPoly({Rational(0), Rational(-1, 2), Rational(-1, 2), Rational(1)}));

  // Random cross-check, dimensions 1..5.
  testsupport::TestRng rng(20260822ULL);
  for (int it = 0; it < 25; ++it) {
    const std::size_t n = 1 + rng.index(5);
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a.at(i, j) = Rational(rng.range(-4, 4), rng.range(1, 3));
    CHECK(charpoly(a) == testsupport::laplace_charpoly(a));
  }
}

TEST_CASE("companion matrix inverts charpoly") {
  const RatPoly p({Rational(1, 3), Rational(-2), Rational(0), Rational(1)});
  CHECK(charpoly(companion(p)) == p);
  // Cayley-Hamilton via poly_eval_matrix.
  const RatMatrix c = companion(p);
  CHECK(poly_eval_matrix(p, c).is_zero());
}
