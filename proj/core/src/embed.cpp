#include "distill/embed.hpp"

#include "distill/errors.hpp"
#include "distill/linalg.hpp"

#include <cassert>
#include <string>
#include <utility>

namespace distill::embed {

namespace {

void check_stationary(const RatVector& s) {
  Rational sum = 0;
  for (const Rational& x : s) {
    if (x <= 0)
      throw ValidationError("embedding: stationary vector must be strictly positive");
    sum += x;
  }
  if (sum != 1) throw ValidationError("embedding: stationary vector must sum to 1");
}

Rational min_entry(const RatVector& s) {
  Rational m = s.front();
  for (const Rational& x : s)
    if (x < m) m = x;
  return m;
}

RatMatrix chart_matrix(std::size_t k) {
  RatMatrix q(k + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    q.at(j, j) = 1;
    q.at(k, j) = -1;
  }
  return q;
}

/* Assembles the embedding for a fixed scale rho and verifies every claimed
 * identity exactly before handing it out. */
Embedding assemble(const RatVector& s, const RatMatrix& a, const RatVector& v,
                   const Rational& rho) {
  const std::size_t k = a.rows();
  Embedding e;
  e.s = s;
  e.rho = rho;
  e.Q = chart_matrix(k);

  const RatMatrix r = hstack(column_matrix(s), e.Q);
  const std::optional<RatMatrix> rinv = inverse(r);
  if (!rinv) throw ReductionError("embedding: chart basis is singular");
  for (std::size_t j = 0; j <= k; ++j)
    if (rinv->at(0, j) != 1)
      throw ReductionError("embedding: inverse chart basis lost its unit row");
  e.Qp = rinv->row_slice(1, k + 1);

  const RatVector qv = mat_apply(e.Q, v);
  e.eta = vec_is_zero(qv) ? Rational(1) : Rational(min_entry(s) / (2 * vec_inf_norm(qv)));
  e.mu = vec_add(s, vec_scale(e.eta, qv));

  const RatMatrix g = mat_mul(e.Q, mat_mul(a, e.Qp));
  RatMatrix m(k + 1, k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j) m.at(i, j) = s[i] + rho * g.at(i, j);
  e.M = std::move(m);

  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j)
      if (e.M.at(i, j) <= 0)
        throw ReductionError("embedding: matrix entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") is not strictly positive");
  for (std::size_t j = 0; j <= k; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i <= k; ++i) col += e.M.at(i, j);
    if (col != 1) throw ReductionError("embedding: column sums are not exactly 1");
  }
  if (!is_distribution(e.mu))
    throw ReductionError("embedding: initial vector is not a distribution");

  /* Sampled trajectory identity M^n mu = s + eta rho^n Q A^n v. */
  RatVector lhs = e.mu;
  RatVector anv = v;
  Rational rhon = 1;
  int step = 0;
  for (int n : {0, 1, 2, 3, 10, 50}) {
    while (step < n) {
      lhs = mat_apply(e.M, lhs);
      anv = mat_apply(a, anv);
      rhon *= rho;
      ++step;
    }
    if (lhs != vec_add(s, vec_scale(e.eta * rhon, mat_apply(e.Q, anv))))
      throw ReductionError("embedding: trajectory identity failed at step " +
                           std::to_string(n));
  }
  return e;
}

} // namespace

Embedding embed_lds(const RatVector& s, const RatMatrix& a, const RatVector& v) {
  const std::size_t k = a.rows();
  if (a.cols() != k) throw ValidationError("embedding: update matrix must be square");
  if (v.size() != k) throw ValidationError("embedding: vector length must match the matrix");
  if (s.size() != k + 1)
    throw ValidationError("embedding: stationary vector must have length k+1");
  check_stationary(s);

  const RatMatrix q = chart_matrix(k);
  const RatMatrix r = hstack(column_matrix(s), q);
  const std::optional<RatMatrix> rinv = inverse(r);
  if (!rinv) throw ReductionError("embedding: chart basis is singular");
  const RatMatrix qp = rinv->row_slice(1, k + 1);
  const RatMatrix g = mat_mul(q, mat_mul(a, qp));
  const Rational gmax = max_abs_entry(g);
  Rational rho = 1;
  if (gmax != 0 && min_entry(s) < 2 * gmax) rho = min_entry(s) / (2 * gmax);
  return assemble(s, a, v, rho);
}

Embedding embed_lds_unit_rho(const RatVector& s, const RatMatrix& a, const RatVector& v) {
  const std::size_t k = a.rows();
  if (a.cols() != k) throw ValidationError("embedding: update matrix must be square");
  if (v.size() != k) throw ValidationError("embedding: vector length must match the matrix");
  if (s.size() != k + 1)
    throw ValidationError("embedding: stationary vector must have length k+1");
  check_stationary(s);

  const RatMatrix q = chart_matrix(k);
  const RatMatrix r = hstack(column_matrix(s), q);
  const std::optional<RatMatrix> rinv = inverse(r);
  if (!rinv) throw ReductionError("embedding: chart basis is singular");
  const RatMatrix qp = rinv->row_slice(1, k + 1);
  if (max_abs_entry(mat_mul(q, mat_mul(a, qp))) >= min_entry(s))
    throw ValidationError(
        "embedding: chart image of the dynamics is not dominated by the stationary "
        "margin; the unscaled variant does not apply");
  return assemble(s, a, v, Rational(1));
}

namespace {

/* First non-homogeneous atom in evaluation order, as a diagnostic path. */
void check_homogeneous(const semialg::SetNodePtr& n, std::size_t target_index,
                       std::size_t& atom_counter) {
  if (n->kind == semialg::SetNode::Kind::atom) {
    if (!n->atom.poly.is_homogeneous()) {
      long lo = -1, hi = -1;
      for (const auto& [e, c] : n->atom.poly.terms()) {
        long d = 0;
        for (auto x : e) d += x;
        lo = (lo < 0 || d < lo) ? d : lo;
        hi = d > hi ? d : hi;
      }
      throw HomogeneityError("target " + std::to_string(target_index) + ", atom " +
                             std::to_string(atom_counter) + ": polynomial mixes monomial "
                             "degrees " + std::to_string(lo) + " and " + std::to_string(hi) +
                             "; the embedding needs scale-invariant targets");
    }
    ++atom_counter;
    return;
  }
  for (const auto& c : n->children) check_homogeneous(c, target_index, atom_counter);
}

} // namespace

reduce::StochasticInstance embed_instance(const LdsInstance& lds, const RatVector& s) {
  const std::size_t k = lds.A.rows();
  if (lds.spec.num_targets != lds.targets.size())
    throw ValidationError("embedding: specification alphabet must have one bit per target");
  for (std::size_t i = 0; i < lds.targets.size(); ++i) {
    if (lds.targets[i].variables != k)
      throw ValidationError("embedding: target " + std::to_string(i) +
                            " is over the wrong number of variables");
    std::size_t atom_counter = 0;
    check_homogeneous(lds.targets[i].root, i, atom_counter);
  }

  const Embedding e = embed_lds(s, lds.A, lds.v);

  /* Sum-to-one chart atom, shared by every rewritten target. */
  semialg::MultiPoly chart(k + 1);
  for (std::size_t j = 0; j <= k; ++j)
    chart = mp_add(chart, semialg::MultiPoly::variable(k + 1, j));
  chart = mp_add(chart, semialg::MultiPoly::constant(k + 1, Rational(-1)));
  const semialg::SetNodePtr chart_atom = semialg::make_atom(chart, semialg::Rel::eq);

  const RatVector shift = vec_scale(Rational(-1), mat_apply(e.Qp, s));  // = 0, kept exact

  reduce::StochasticInstance out;
  out.M = e.M;
  out.mu = e.mu;
  out.spec = lds.spec;
  out.targets.reserve(lds.targets.size());
  for (const semialg::SemialgebraicSet& t : lds.targets) {
    semialg::SemialgebraicSet mapped = semialg::affine_preimage(t, e.Qp, shift);
    semialg::SemialgebraicSet rewritten;
    rewritten.variables = k + 1;
    rewritten.root = semialg::make_and({chart_atom, mapped.root});

    const RatMatrix hull = semialg::syntactic_hull(t);
    const RatMatrix lifted = mat_mul(hull, e.Qp);
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < lifted.rows(); ++i) {
      RatVector row = lifted.row(i);
      if (!vec_is_zero(row)) rows.push_back(canonical_integer_direction(row));
    }
    RatMatrix declared(rows.size(), k + 1);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j <= k; ++j) declared.at(i, j) = rows[i][j];
    rewritten.declared_hull = std::move(declared);

    if (!semialg::is_s_homogeneous(rewritten, s))
      throw ReductionError("embedding: rewritten target lost homogeneity at s");
    out.targets.push_back(std::move(rewritten));
  }

  reduce::validate(out);
  return out;
}

} // namespace distill::embed
