#include "distill/reduce.hpp"

#include "distill/errors.hpp"
#include "distill/linalg.hpp"

#include <cassert>
#include <string>
#include <utility>

namespace distill::reduce {

using semialg::SemialgebraicSet;

automata::Letter membership_letter(const std::vector<SemialgebraicSet>& targets,
                                   const RatVector& x) {
  assert(targets.size() < 31);
  automata::Letter l = 0;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (semialg::member(targets[i], x)) l |= (1u << i);
  return l;
}

std::vector<automata::Letter> simulate_letters(const RatMatrix& m, RatVector x,
                                               const std::vector<SemialgebraicSet>& targets,
                                               std::size_t count) {
  std::vector<automata::Letter> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(membership_letter(targets, x));
    if (n + 1 < count) x = mat_apply(m, x);
  }
  return out;
}

void validate(const StochasticInstance& inst) {
  if (inst.M.rows() != inst.M.cols())
    throw ValidationError("instance: matrix must be square");
  if (!is_column_stochastic(inst.M))
    throw ValidationError(
        "instance: matrix must be column-stochastic (nonnegative entries, unit column sums)");
  if (inst.mu.size() != inst.M.rows())
    throw ValidationError("instance: initial vector length must match the matrix order");
  if (!is_distribution(inst.mu))
    throw ValidationError("instance: initial vector must be a distribution");
  if (inst.targets.size() >= 31)
    throw ValidationError("instance: too many targets for bitmask letters");
  for (std::size_t i = 0; i < inst.targets.size(); ++i)
    if (inst.targets[i].variables != inst.M.rows())
      throw ValidationError("instance: target " + std::to_string(i) +
                            " is over the wrong number of variables");
  if (inst.spec.num_targets != inst.targets.size())
    throw ValidationError("instance: specification alphabet must have one bit per target");
  automata::validate(inst.spec);
  if (!inst.intrinsic_dims.empty() && inst.intrinsic_dims.size() != inst.targets.size())
    throw ValidationError("instance: intrinsic-dimension annotations must cover every target");
}

namespace {

RatMatrix matrix_from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == cols);
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

/* Rows h^T of a hull become h^T L in the preimage {x : L x in T}: every
 * point of the preimage satisfies (h^T L) x = 0. Zero rows vanish. */
RatMatrix transformed_hull(const RatMatrix& hull, const RatMatrix& l) {
  const RatMatrix hl = mat_mul(hull, l);
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < hl.rows(); ++i) {
    RatVector row = hl.row(i);
    if (!vec_is_zero(row)) rows.push_back(canonical_integer_direction(row));
  }
  return matrix_from_rows(rows, l.cols());
}

} // namespace

Stage1Result eliminate_zero(const StochasticInstance& inst) {
  validate(inst);
  const std::size_t k = inst.M.rows();
  const spectra::SpectralProfile profile = spectra::analyze(inst.M);

  Stage1Result r;
  r.ell = profile.zero_mult;
  if (r.ell == 0) {
    r.Q = RatMatrix::identity(k);
    r.Qp = r.Q;
    r.B = inst.M;
    r.v1 = inst.mu;
    r.spec1 = inst.spec;
    r.targets1 = inst.targets;
    return r;
  }

  const RatMatrix ml = mat_pow(inst.M, r.ell);
  const RatMatrix p = kernel_basis(ml);
  const ColumnSpace w = column_space_basis(ml);
  if (p.cols() != r.ell || w.basis.cols() + r.ell != k)
    throw ReductionError("zero-elimination: kernel and column space of M^ell do not split the space");
  r.Q = w.basis;
  const RatMatrix basis = hstack(p, r.Q);
  const std::optional<RatMatrix> basis_inv = inverse(basis);
  if (!basis_inv)
    throw ReductionError("zero-elimination: combined kernel/column basis is singular");
  r.Qp = basis_inv->row_slice(r.ell, k);
  r.B = mat_mul(r.Qp, mat_mul(inst.M, r.Q));

  const std::optional<RatVector> coords = solve(basis, inst.mu);
  assert(coords);
  r.v1.assign(coords->begin() + static_cast<std::ptrdiff_t>(r.ell), coords->end());

  r.prefix_letters = simulate_letters(inst.M, inst.mu, inst.targets, r.ell);
  r.spec1 = automata::reroot(inst.spec, r.prefix_letters);
  r.targets1.reserve(inst.targets.size());
  for (const SemialgebraicSet& t : inst.targets) {
    SemialgebraicSet t1 = semialg::affine_preimage(t, r.Q, RatVector(k, Rational(0)));
    t1.declared_hull = transformed_hull(semialg::syntactic_hull(t), r.Q);
    r.targets1.push_back(std::move(t1));
  }
  return r;
}

Stage2Result eliminate_unit_roots(const Stage1Result& s1) {
  const std::size_t k1 = s1.B.rows();
  if (rank(s1.B) != k1)
    throw ValidationError("unit-root elimination: matrix must be invertible");
  const spectra::SpectralProfile profile = spectra::analyze(s1.B);

  Stage2Result r;
  r.c = static_cast<std::size_t>(profile.period_c);
  r.base_targets = s1.targets1.size();
  const std::size_t h = r.base_targets;

  if (r.c == 1) {
    r.M2 = s1.B;
    r.targets2 = s1.targets1;
    r.spec2 = s1.spec1;
    r.letter_map.resize(std::size_t{1} << h);
    for (std::uint32_t sigma = 0; sigma < r.letter_map.size(); ++sigma)
      r.letter_map[sigma] = {sigma};
    return r;
  }

  if (r.c * h > 20)
    throw ReductionError("unit-root elimination: blocked alphabet of 2^" +
                         std::to_string(r.c * h) + " letters exceeds the supported size");

  r.M2 = mat_pow(s1.B, r.c);

  r.targets2.reserve(r.c * h);
  RatMatrix br = RatMatrix::identity(k1);  // B^phase
  for (std::size_t phase = 0; phase < r.c; ++phase) {
    for (std::size_t i = 0; i < h; ++i) {
      SemialgebraicSet t2 =
          semialg::affine_preimage(s1.targets1[i], br, RatVector(k1, Rational(0)));
      t2.declared_hull = transformed_hull(semialg::syntactic_hull(s1.targets1[i]), br);
      r.targets2.push_back(std::move(t2));
    }
    if (phase + 1 < r.c) br = mat_mul(s1.B, br);
  }

  const std::uint32_t new_letters = 1u << (r.c * h);
  const automata::Letter mask = (h == 0) ? 0u : ((1u << h) - 1u);
  r.letter_map.resize(new_letters);
  for (std::uint32_t sigma = 0; sigma < new_letters; ++sigma) {
    std::vector<automata::Letter> block(r.c);
    for (std::size_t phase = 0; phase < r.c; ++phase)
      block[phase] = (sigma >> (phase * h)) & mask;
    r.letter_map[sigma] = std::move(block);
  }
  r.spec2 = automata::power_construct(s1.spec1, r.c,
                                      static_cast<std::uint32_t>(r.c * h), r.letter_map);
  return r;
}

namespace {

/* The smallest affine flat certifiably containing a stage-two target,
 * re-expressed in reduced coordinates x (points s + Q3 x): consistency of
 * (lhs Q3) x = rhs - lhs s, the exact squared distance from x = 0 to that
 * flat, and the flat rows that pass through s (which become zero-constant
 * hull rows of the reduced target). */
struct FlatDistance {
  bool available = false;
  bool inconsistent = false;
  Rational dist_sq = 0;
  RatMatrix reduced_rows{0, 0};
};

FlatDistance flat_distance(const SemialgebraicSet& t2, const RatVector& s,
                           const RatMatrix& q3) {
  FlatDistance out;
  out.reduced_rows = RatMatrix(0, q3.cols());
  const std::optional<semialg::AffineFlat> flat = semialg::common_affine_flat(t2);
  if (!flat) return out;
  out.available = true;
  if (flat->lhs.rows() == 0) return out;  // no constraints: distance 0

  const RatMatrix g = mat_mul(flat->lhs, q3);
  const RatVector d = vec_sub(flat->rhs, mat_apply(flat->lhs, s));

  std::vector<RatVector> hull_rows;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (d[i] == 0) {
      RatVector row = g.row(i);
      if (!vec_is_zero(row)) hull_rows.push_back(canonical_integer_direction(row));
    }
  out.reduced_rows = matrix_from_rows(hull_rows, q3.cols());

  /* Minimum-norm solution of g x = d: reduce to independent rows via the
   * echelon of the augmented system, then solve the Gram normal equations.
   * A pivot landing in the augmented column certifies inconsistency. */
  const Echelon e = bareiss_echelon(hstack(g, column_matrix(d)));
  std::vector<RatVector> ind_rows;
  RatVector ind_rhs;
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    if (e.pivot_cols[i] == g.cols()) {
      out.inconsistent = true;
      return out;
    }
    RatVector row = e.mat.row(i);
    ind_rhs.push_back(row.back());
    row.pop_back();
    ind_rows.push_back(std::move(row));
  }
  if (ind_rows.empty()) return out;  // 0 = 0 only: distance 0

  const RatMatrix gt = matrix_from_rows(ind_rows, q3.cols());
  const RatMatrix gram = mat_mul(gt, gt.transpose());
  const std::optional<RatVector> y = solve(gram, ind_rhs);
  assert(y);  // Gram matrix of independent rows is invertible
  out.dist_sq = vec_dot(ind_rhs, *y);
  return out;
}

} // namespace

ReducedInstance eliminate_stationary(const Stage2Result& s2, const RatVector& mu1) {
  const std::size_t k2 = s2.M2.rows();
  if (mu1.size() != k2)
    throw ValidationError("stationary elimination: vector length must match the matrix order");

  const RatMatrix d = mat_sub(s2.M2, RatMatrix::identity(k2));
  const RatMatrix p = kernel_basis(d);
  if (p.cols() == 0)
    throw ReductionError("stationary elimination: matrix has no unit eigenvalue");
  const ColumnSpace w = column_space_basis(d);

  ReducedInstance red;
  red.Q3 = w.basis;
  const std::size_t dyn = red.Q3.cols();
  if (p.cols() + dyn != k2)
    throw ReductionError("stationary elimination: unit eigenvalue is not semisimple");
  const RatMatrix basis = hstack(p, red.Q3);
  const std::optional<RatMatrix> basis_inv = inverse(basis);
  if (!basis_inv)
    throw ReductionError("stationary elimination: eigenspace and complement do not split the space");
  red.Q3p = basis_inv->row_slice(p.cols(), k2);
  red.A = mat_mul(red.Q3p, mat_mul(s2.M2, red.Q3));

  const std::optional<RatVector> coords = solve(basis, mu1);
  assert(coords);
  const RatVector ppart(coords->begin(), coords->begin() + static_cast<std::ptrdiff_t>(p.cols()));
  red.v.assign(coords->begin() + static_cast<std::ptrdiff_t>(p.cols()), coords->end());
  red.s = mat_apply(p, ppart);

  const std::size_t nt = s2.targets2.size();
  std::vector<FlatDistance> fd;
  fd.reserve(nt);
  Rational min_positive = 0;
  bool have_positive = false;
  for (std::size_t j = 0; j < nt; ++j) {
    fd.push_back(flat_distance(s2.targets2[j], red.s, red.Q3));
    const FlatDistance& f = fd.back();
    if (f.available && !f.inconsistent && f.dist_sq > 0)
      if (!have_positive || f.dist_sq < min_positive) {
        min_positive = f.dist_sq;
        have_positive = true;
      }
  }
  red.eps_sq = have_positive ? Rational(min_positive / 2) : Rational(1);

  const std::optional<spectra::DecayCertificate> decay =
      spectra::decay_bound(red.A, red.v, red.eps_sq);
  if (!decay)
    throw ReductionError(
        "stationary elimination: no power of the reduced matrix contracts within the "
        "search cap; the spectrum is not certifiably inside the unit circle "
        "(DISTILL_MCAP raises the cap)");
  red.decay = *decay;
  red.n0 = decay->n0;

  const std::size_t h = s2.base_targets;
  red.targets3.reserve(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    SemialgebraicSet pre = semialg::affine_preimage(s2.targets2[j], red.Q3, red.s);
    pre.declared_hull = fd[j].reduced_rows;
    red.targets3.push_back(semialg::ball_intersect(pre, red.eps_sq));

    TargetReport rep;
    rep.index = j;
    rep.original = (h == 0) ? 0 : j % h;
    rep.phase = (h == 0) ? 0 : j / h;
    rep.before_dim = k2 - rank(semialg::syntactic_hull(s2.targets2[j]));
    rep.hull_available = fd[j].available;
    rep.empty = fd[j].available && (fd[j].inconsistent || fd[j].dist_sq > 0);
    rep.after_dim = rep.empty ? 0 : dyn - rank(fd[j].reduced_rows);
    rep.drop_certified = fd[j].available && (rep.empty || rep.after_dim < rep.before_dim);
    red.certificate.dims.push_back(rep);
  }

  red.spec3 = automata::reroot(s2.spec2, simulate_letters(s2.M2, mu1, s2.targets2, red.n0));
  red.certificate.ell = 0;
  red.certificate.c = s2.c;
  red.certificate.n0 = red.n0;
  red.certificate.base_targets = h;
  red.certificate.dyn_dim = dyn;

  /* Spot-check the decomposition before handing it out. */
  RatVector lhs = mu1;
  RatVector xq = red.v;
  for (int n = 0; n <= 3; ++n) {
    if (lhs != vec_add(red.s, mat_apply(red.Q3, xq)))
      throw ReductionError("stationary elimination: decomposition identity failed at step " +
                           std::to_string(n));
    lhs = mat_apply(s2.M2, lhs);
    xq = mat_apply(red.A, xq);
  }
  return red;
}

ReducedInstance reduce_full(const StochasticInstance& inst) {
  const Stage1Result s1 = eliminate_zero(inst);
  const Stage2Result s2 = eliminate_unit_roots(s1);
  const RatVector mu1 =
      mat_apply(mat_pow(s1.B, static_cast<unsigned long long>(s1.ell)), s1.v1);
  ReducedInstance red = eliminate_stationary(s2, mu1);
  red.certificate.ell = s1.ell;
  red.certificate.prefix_letters =
      simulate_letters(inst.M, inst.mu, inst.targets, s1.ell + s2.c * red.n0);
  return red;
}

std::vector<automata::Letter> reconstruct_letters(const ReducedInstance& red,
                                                  std::size_t count) {
  const ReductionCertificate& cert = red.certificate;
  std::vector<automata::Letter> out;
  out.reserve(count);
  const std::size_t pfx = cert.prefix_letters.size();
  for (std::size_t n = 0; n < count && n < pfx; ++n) out.push_back(cert.prefix_letters[n]);
  if (out.size() == count) return out;
  if (pfx != cert.ell + cert.c * cert.n0)
    throw ReductionError("letter reconstruction: certificate prefix does not cover the "
                         "pre-stationary window");

  const std::size_t h = cert.base_targets;
  std::size_t q = cert.n0;
  std::size_t phase = 0;
  RatVector x = mat_apply(mat_pow(red.A, static_cast<unsigned long long>(q)), red.v);
  for (std::size_t n = pfx; n < count; ++n) {
    automata::Letter l = 0;
    for (std::size_t i = 0; i < h; ++i)
      if (semialg::member(red.targets3[phase * h + i], x)) l |= (1u << i);
    out.push_back(l);
    if (++phase == cert.c) {
      phase = 0;
      x = mat_apply(red.A, x);
      ++q;
    }
  }
  return out;
}

} // namespace distill::reduce
