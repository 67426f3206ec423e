#pragma once

#include "distill/matrix.hpp"
#include "distill/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace distill::semialg {

/* Multivariate rational polynomial over a fixed number of variables.
 * Terms are keyed by exponent tuples in lexicographic order, so iteration,
 * equality and serialisation are all deterministic. Zero coefficients are
 * never stored. Zero variables is legal: such polynomials are constants. */
class MultiPoly {
public:
  using Exponents = std::vector<std::uint32_t>;

  explicit MultiPoly(std::size_t variables = 0) : vars_(variables) {}
  static MultiPoly constant(std::size_t variables, const Rational& c);
  static MultiPoly variable(std::size_t variables, std::size_t i);

  [[nodiscard]] std::size_t variables() const { return vars_; }
  [[nodiscard]] const std::map<Exponents, Rational>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c);

  bool operator==(const MultiPoly& o) const = default;

  [[nodiscard]] Rational eval(const RatVector& x) const;

  /* Highest total degree of any term; -1 for the zero polynomial. */
  [[nodiscard]] long total_degree() const;
  /* All terms share one total degree (vacuously true when zero). */
  [[nodiscard]] bool is_homogeneous() const;

  /* Composition with the affine map x = L y + b: L is variables() x new_vars.
   * The result ranges over new_vars variables. */
  [[nodiscard]] MultiPoly substitute_affine(const RatMatrix& l, const RatVector& b) const;

  /* Same polynomial scaled to coprime integer coefficients, first (lex-least)
   * nonzero coefficient positive. Used when exporting atoms. */
  [[nodiscard]] MultiPoly integer_normalized() const;

  /* If the polynomial is a # 0 + sum a_i x_i (total degree <= 1), returns
   * (a, a0) as coefficient vector plus constant. */
  [[nodiscard]] std::optional<std::pair<RatVector, Rational>> as_affine_form() const;

private:
  std::size_t vars_;
  std::map<Exponents, Rational> terms_;
};

MultiPoly mp_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_scale(const Rational& c, const MultiPoly& a);
MultiPoly mp_pow(const MultiPoly& a, std::size_t n);

enum class Rel : std::uint8_t { lt, le, eq, ne, ge, gt };

Rel negate_rel(Rel r);
bool rel_holds(int sign, Rel r);
const char* rel_symbol(Rel r);

/* Atom is "poly rel 0". */
struct Atom {
  MultiPoly poly;
  Rel rel = Rel::eq;
  bool operator==(const Atom&) const = default;
};

/* Immutable Boolean combination of atoms. Sets share subtrees freely. */
struct SetNode;
using SetNodePtr = std::shared_ptr<const SetNode>;
struct SetNode {
  enum class Kind : std::uint8_t { atom, conj, disj, neg };
  Kind kind = Kind::atom;
  Atom atom;                       // kind == atom
  std::vector<SetNodePtr> children; // conj/disj: >= 1, neg: exactly 1
};

struct SemialgebraicSet {
  std::size_t variables = 0;
  SetNodePtr root;
  /* Optional annotation: rows H with H x = 0 for every point of the set.
   * Trusted input; combined with the syntactic hull where needed. */
  std::optional<RatMatrix> declared_hull;
};

SetNodePtr make_atom(MultiPoly p, Rel r);
SetNodePtr make_and(std::vector<SetNodePtr> children);
SetNodePtr make_or(std::vector<SetNodePtr> children);
SetNodePtr make_not(SetNodePtr child);

/* The whole space: the vacuous atom 0 = 0. */
SemialgebraicSet ambient_set(std::size_t variables);

int eval_sign(const MultiPoly& p, const RatVector& x);
bool member(const SemialgebraicSet& t, const RatVector& x);

/* {y : L y + b in t}; result over l.cols() variables. The declared hull does
 * not survive an affine substitution and is dropped; callers re-derive it. */
SemialgebraicSet affine_preimage(const SemialgebraicSet& t, const RatMatrix& l,
                                 const RatVector& b);

/* Rows = the degree-1, zero-constant '='-forms occurring on every branch of
 * the disjunctive normal form, deduplicated up to scaling, together with any
 * declared rows. Sound over-approximation: the set satisfies H x = 0. */
RatMatrix syntactic_hull(const SemialgebraicSet& t);

/* Affine generalisation used by the stationary stage: every '='-atom with a
 * degree <= 1 polynomial common to all DNF branches, as rows (a | b) meaning
 * a . x = b for all points of the set. Zero-constant rows of the declared
 * hull are included. Empty optional when the DNF expansion exceeds the
 * internal branch cap (the caller then treats the flat as unknown). */
struct AffineFlat {
  RatMatrix lhs;   // rows a
  RatVector rhs;   // entries b
};
std::optional<AffineFlat> common_affine_flat(const SemialgebraicSet& t);

/* t intersected with the open ball sum x_i^2 < eps_sq. */
SemialgebraicSet ball_intersect(const SemialgebraicSet& t, const Rational& eps_sq);

/* Every atom polynomial becomes homogeneous after recentering at s, i.e.
 * p(x + s) is homogeneous for each atom p. */
bool is_s_homogeneous(const SemialgebraicSet& t, const RatVector& s);

/* Three-valued emptiness with a witness on the nonempty side. */
struct Emptiness {
  enum class Kind : std::uint8_t { empty, nonempty, unknown };
  Kind kind = Kind::unknown;
  std::optional<RatVector> witness;
};
/* hull_hint: callers that know the set's hull misses its reference point pass
 * false and the set is empty by that argument alone. */
Emptiness emptiness(const SemialgebraicSet& t,
                    std::optional<bool> hull_hint = std::nullopt);

} // namespace distill::semialg
