#include "distill/decide.hpp"

#include "distill/linalg.hpp"
#include "distill/semialg.hpp"

#include <cassert>

namespace distill::decide {

BoundedCheck bounded_check(const reduce::StochasticInstance& inst, std::size_t horizon) {
  BoundedCheck out;
  out.letters = reduce::simulate_letters(inst.M, inst.mu, inst.targets, horizon);
  out.state_trace = automata::run(inst.spec, out.letters).visited;
  return out;
}

namespace {

/* Status of one reduced target within the certified ball. Emptiness of the
 * target itself settles `empty`; emptiness of its complement intersected
 * with the same ball settles `const_true`. Both checks are sound, neither is
 * complete — except over zero variables, where membership of the single
 * point decides exactly. */
TargetStatus target_status(const semialg::SemialgebraicSet& t3, const Rational& eps_sq,
                           bool cert_empty, Empty3& emptiness_out) {
  if (cert_empty) {
    emptiness_out = Empty3::empty;
    return TargetStatus::empty;
  }
  const semialg::Emptiness direct = semialg::emptiness(t3, std::nullopt);
  if (direct.kind == semialg::Emptiness::Kind::empty) {
    emptiness_out = Empty3::empty;
    return TargetStatus::empty;
  }
  emptiness_out = direct.kind == semialg::Emptiness::Kind::nonempty ? Empty3::nonempty
                                                                    : Empty3::unknown;

  semialg::SemialgebraicSet complement;
  complement.variables = t3.variables;
  complement.root = semialg::make_not(t3.root);
  const semialg::Emptiness comp =
      semialg::emptiness(semialg::ball_intersect(complement, eps_sq), std::nullopt);
  if (comp.kind == semialg::Emptiness::Kind::empty) return TargetStatus::const_true;
  return TargetStatus::varying;
}

Classification classify(const reduce::ReducedInstance& red,
                        const reduce::StochasticInstance& inst,
                        const std::vector<Empty3>& reduced_empty) {
  Classification cl;
  cl.dyn_dim = red.certificate.dyn_dim;
  const std::size_t k = inst.M.rows();
  const std::size_t h = red.certificate.base_targets;
  const std::size_t c = red.certificate.c;
  cl.all_low_dimensional = true;
  for (std::size_t i = 0; i < inst.targets.size(); ++i) {
    TargetClass tc;
    tc.hull_subspace_dim = k - rank(semialg::syntactic_hull(inst.targets[i]));
    if (!inst.intrinsic_dims.empty()) tc.intrinsic_dim = inst.intrinsic_dims[i];
    tc.markov_low_dimensional =
        tc.hull_subspace_dim <= 4 || (tc.intrinsic_dim && *tc.intrinsic_dim <= 1);
    cl.all_low_dimensional = cl.all_low_dimensional && tc.markov_low_dimensional;

    bool all_empty = true;
    bool any_nonempty = false;
    for (std::size_t r = 0; r < c; ++r) {
      const Empty3 e = reduced_empty[r * h + i];
      all_empty = all_empty && e == Empty3::empty;
      any_nonempty = any_nonempty || e == Empty3::nonempty;
    }
    tc.empty = all_empty ? Empty3::empty : (any_nonempty ? Empty3::nonempty : Empty3::unknown);
    cl.targets.push_back(tc);
  }
  cl.tame_criterion_applies = cl.all_low_dimensional || cl.dyn_dim <= 3;
  return cl;
}

} // namespace

Verdict decide_fragment(const reduce::ReducedInstance& red,
                        const reduce::StochasticInstance& inst) {
  const reduce::ReductionCertificate& cert = red.certificate;
  const std::size_t nt = red.targets3.size();
  const std::size_t h = cert.base_targets;
  assert(cert.dims.size() == nt);

  Verdict v;
  v.reduced_statuses.reserve(nt);
  std::vector<Empty3> reduced_empty(nt, Empty3::unknown);
  bool all_settled = true;
  for (std::size_t j = 0; j < nt; ++j) {
    const TargetStatus st =
        target_status(red.targets3[j], red.eps_sq, cert.dims[j].empty, reduced_empty[j]);
    v.reduced_statuses.push_back(st);
    all_settled = all_settled && st != TargetStatus::varying;
  }

  v.classification = classify(red, inst, reduced_empty);

  if (!all_settled) {
    v.kind = Verdict::Kind::ReducedOnly;
    return v;
  }

  /* Constant blocked letter from n0 on. */
  automata::Letter sigma = 0;
  for (std::size_t j = 0; j < nt; ++j)
    if (v.reduced_statuses[j] == TargetStatus::const_true) sigma |= (1u << j);

  const bool accepted = automata::lasso_accept(red.spec3, automata::Lasso{{}, {sigma}});
  v.kind = accepted ? Verdict::Kind::Accept : Verdict::Kind::Reject;

  /* Original-time evidence: the certificate prefix, then the c-letter
   * expansion of the constant blocked letter, forever. */
  v.evidence.prefix = cert.prefix_letters;
  v.evidence.cycle.reserve(cert.c);
  for (std::size_t r = 0; r < cert.c; ++r) {
    automata::Letter l = 0;
    for (std::size_t i = 0; i < h; ++i)
      if (v.reduced_statuses[r * h + i] == TargetStatus::const_true) l |= (1u << i);
    v.evidence.cycle.push_back(l);
  }
  return v;
}

CrossValidation cross_validate(const reduce::StochasticInstance& inst,
                               const reduce::ReducedInstance& red, std::size_t window) {
  CrossValidation r;
  r.window = window;
  const std::vector<automata::Letter> direct =
      reduce::simulate_letters(inst.M, inst.mu, inst.targets, window);
  const std::vector<automata::Letter> reconstructed = reduce::reconstruct_letters(red, window);
  for (std::size_t n = 0; n < window; ++n)
    if (direct[n] != reconstructed[n]) {
      r.ok = false;
      r.first_divergence = n;
      return r;
    }
  return r;
}

} // namespace distill::decide
