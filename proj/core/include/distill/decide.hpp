#pragma once

#include "distill/automata.hpp"
#include "distill/reduce.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace distill::decide {

/* What is known about one reduced (phase-split) target along the tail of
 * the trajectory, where every point lies inside the certified ball:
 *   empty       no ball point is in the target — the letter bit is 0 forever
 *   const_true  every ball point is in the target — the bit is 1 forever
 *   varying     neither could be certified; the fragment is out of reach
 */
enum class TargetStatus { empty, const_true, varying };

/* Three-valued emptiness verdict carried per original target. */
enum class Empty3 { empty, nonempty, unknown };

struct TargetClass {
  std::size_t hull_subspace_dim = 0;  // ambient dim minus certified hull rank
  std::optional<std::uint32_t> intrinsic_dim;  // user annotation, never computed
  bool markov_low_dimensional = false;  // hull_subspace_dim <= 4 or intrinsic <= 1
  Empty3 empty = Empty3::unknown;       // aggregated over the phase copies
};

struct Classification {
  std::size_t dyn_dim = 0;
  std::vector<TargetClass> targets;  // per original target
  bool all_low_dimensional = false;
  /* The reduced instance is decidable by the published procedure for tame
   * systems when every target is Markov-low-dimensional or dyn_dim <= 3. */
  bool tame_criterion_applies = false;
};

struct BoundedCheck {
  std::vector<automata::Letter> letters;    // n = 0 .. horizon-1
  std::vector<std::uint32_t> state_trace;   // specification states, horizon+1 long
};

/* Direct exact simulation: the universal oracle everything else is checked
 * against. */
BoundedCheck bounded_check(const reduce::StochasticInstance& inst, std::size_t horizon);

/* Accept/Reject verdicts carry an original-time lasso that reproduces the
 * verdict under the original specification by plain simulation; ReducedOnly
 * means the fragment machinery could not certify a constant tail and the
 * caller gets the classification instead. */
struct Verdict {
  enum class Kind { Accept, Reject, ReducedOnly } kind = Kind::ReducedOnly;
  automata::Lasso evidence;  // meaningful for Accept/Reject
  std::vector<TargetStatus> reduced_statuses;  // per flattened reduced target
  Classification classification;
};

/* Decides the self-contained fragments: once every reduced target's letter
 * bit is provably constant from n0 on (always true when dyn_dim = 0), the
 * reduced word is an explicit lasso and the Muller evaluation is exact. */
Verdict decide_fragment(const reduce::ReducedInstance& red,
                        const reduce::StochasticInstance& inst);

struct CrossValidation {
  bool ok = true;
  std::size_t first_divergence = 0;  // meaningful when !ok
  std::size_t window = 0;
};

/* Replays the certificate against direct simulation over a window. */
CrossValidation cross_validate(const reduce::StochasticInstance& inst,
                               const reduce::ReducedInstance& red, std::size_t window);

} // namespace distill::decide
