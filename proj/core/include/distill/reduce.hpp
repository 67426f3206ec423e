#pragma once

#include "distill/automata.hpp"
#include "distill/matrix.hpp"
#include "distill/rational.hpp"
#include "distill/semialg.hpp"
#include "distill/spectra.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace distill::reduce {

/* A Markov chain viewed as a distribution transformer, together with the
 * property to check: semialgebraic targets and a Muller specification over
 * the alphabet of target-membership letters. */
struct StochasticInstance {
  RatMatrix M;   // column-stochastic, k x k
  RatVector mu;  // initial distribution
  std::vector<semialg::SemialgebraicSet> targets;
  automata::MullerAutomaton spec;  // num_targets == targets.size()
  /* Optional per-target intrinsic-dimension annotations (never computed,
   * only consumed by the classification). */
  std::vector<std::optional<std::uint32_t>> intrinsic_dims;
};

/* Throws ValidationError unless M is column-stochastic, mu a distribution,
 * targets dimensioned over k variables, and the automaton well-formed with
 * one alphabet bit per target. */
void validate(const StochasticInstance& inst);

/* Bitmask letter {i : x in targets[i]}. */
automata::Letter membership_letter(const std::vector<semialg::SemialgebraicSet>& targets,
                                   const RatVector& x);

/* Letters of x, m x, m^2 x, ... for count steps (exact powering). */
std::vector<automata::Letter> simulate_letters(const RatMatrix& m, RatVector x,
                                               const std::vector<semialg::SemialgebraicSet>& targets,
                                               std::size_t count);

/* Stage one removes the nilpotent part. With ell the algebraic multiplicity
 * of eigenvalue 0, P spans ker(M^ell), Q independent columns of M^ell, and
 * in the basis [P Q] the chain acts invertibly on the Q-block:
 * M^n mu = Q B^n v1 for all n >= ell. */
struct Stage1Result {
  std::size_t ell = 0;
  RatMatrix Q;    // k x (k-ell)
  RatMatrix Qp;   // (k-ell) x k, Qp Q = I
  RatMatrix B;    // invertible (k-ell) x (k-ell)
  RatVector v1;
  std::vector<automata::Letter> prefix_letters;  // the ell consumed letters
  automata::MullerAutomaton spec1;
  std::vector<semialg::SemialgebraicSet> targets1;
};

Stage1Result eliminate_zero(const StochasticInstance& inst);

/* Stage two removes roots of unity by blocking time into chunks of c, the
 * lcm of the detected cyclotomic orders of B. Targets split per phase:
 * index (i, r) lives at position r*h + i, and a letter of the blocked word
 * packs the c phase letters of a block side by side, h bits each. */
struct Stage2Result {
  std::size_t c = 1;
  std::size_t base_targets = 0;  // h, the stage-one target count
  RatMatrix M2;                  // = B^c
  std::vector<semialg::SemialgebraicSet> targets2;  // size c*h
  automata::MullerAutomaton spec2;
  std::vector<std::vector<automata::Letter>> letter_map;  // blocked letter -> c letters
};

Stage2Result eliminate_unit_roots(const Stage1Result& s1);

/* Per-target bookkeeping for the reduction certificate: dimensions of the
 * smallest enclosing subspace before and after stage three, whether the
 * enclosing flat could be certified at all, and whether the target was
 * proven empty because its flat misses the stationary point. */
struct TargetReport {
  std::size_t index = 0;     // flattened stage-two index r*h + i
  std::size_t original = 0;  // i
  std::size_t phase = 0;     // r
  std::size_t before_dim = 0;
  std::size_t after_dim = 0;
  bool hull_available = false;
  bool drop_certified = false;
  bool empty = false;
};

/* Everything needed to replay the original characteristic word from the
 * reduced trajectory: alpha(n) for n < ell + c*n0 is stored verbatim, and
 * beyond that n - ell = q c + r addresses target (i, r) against A^q v. */
struct ReductionCertificate {
  std::size_t ell = 0;
  std::size_t c = 1;
  std::size_t n0 = 0;
  std::size_t base_targets = 0;  // h
  std::vector<automata::Letter> prefix_letters;  // original letters, ell + c*n0 of them
  std::vector<TargetReport> dims;
  std::size_t dyn_dim = 0;
};

/* Final form: an invertible linear dynamical system whose spectrum lies
 * strictly inside the unit circle, plus the stationary offset. For all
 * q >= 0, M2^q mu1 = s + Q3 A^q v, and for q >= n0 the trajectory A^q v
 * stays inside the ball of squared radius eps_sq that the reduced targets
 * are intersected with. */
struct ReducedInstance {
  RatVector s;    // stationary part, stage-two coordinates
  RatMatrix Q3;   // k2 x dyn
  RatMatrix Q3p;  // dyn x k2, Q3p Q3 = I
  RatMatrix A;    // invertible dyn x dyn, spectral radius < 1
  RatVector v;
  Rational eps_sq;
  std::size_t n0 = 0;
  std::vector<semialg::SemialgebraicSet> targets3;
  automata::MullerAutomaton spec3;
  spectra::DecayCertificate decay;
  ReductionCertificate certificate;
};

/* mu1 must be the stage-one image of the initial distribution at time ell,
 * i.e. B^ell v1, so that the blocked trajectory starts at q = 0. */
ReducedInstance eliminate_stationary(const Stage2Result& s2, const RatVector& mu1);

/* The composed pipeline; also fills the original-time certificate prefix. */
ReducedInstance reduce_full(const StochasticInstance& inst);

/* Replays alpha(0..count-1) from the reduced instance and its certificate
 * alone: stored prefix first, then membership of A^q v in the phase targets. */
std::vector<automata::Letter> reconstruct_letters(const ReducedInstance& red, std::size_t count);

} // namespace distill::reduce
