#include "distill/semialg.hpp"

#include "distill/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace distill::semialg {

/* ---------------------------------------------------------------- MultiPoly */

MultiPoly MultiPoly::constant(std::size_t variables, const Rational& c) {
  MultiPoly p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t variables, std::size_t i) {
  assert(i < variables);
  MultiPoly p(variables);
  Exponents e(variables, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  assert(e.size() == vars_);
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiPoly::eval(const RatVector& x) const {
  assert(x.size() == vars_);
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < vars_; ++i)
      for (std::uint32_t p = 0; p < e[i]; ++p) t *= x[i];
    acc += t;
  }
  return acc;
}

long MultiPoly::total_degree() const {
  long best = -1;
  for (const auto& [e, c] : terms_) {
    long d = 0;
    for (auto x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

bool MultiPoly::is_homogeneous() const {
  long seen = -1;
  for (const auto& [e, c] : terms_) {
    long d = 0;
    for (auto x : e) d += x;
    if (seen < 0) seen = d;
    else if (d != seen) return false;
  }
  return true;
}

MultiPoly mp_add(const MultiPoly& a, const MultiPoly& b) {
  assert(a.variables() == b.variables());
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

MultiPoly mp_sub(const MultiPoly& a, const MultiPoly& b) {
  assert(a.variables() == b.variables());
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, -c);
  return r;
}

MultiPoly mp_mul(const MultiPoly& a, const MultiPoly& b) {
  assert(a.variables() == b.variables());
  MultiPoly r(a.variables());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      MultiPoly::Exponents e(a.variables());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly mp_scale(const Rational& c, const MultiPoly& a) {
  MultiPoly r(a.variables());
  if (c == 0) return r;
  for (const auto& [e, x] : a.terms()) r.add_term(e, c * x);
  return r;
}

MultiPoly mp_pow(const MultiPoly& a, std::size_t n) {
  MultiPoly acc = MultiPoly::constant(a.variables(), Rational(1));
  for (std::size_t i = 0; i < n; ++i) acc = mp_mul(acc, a);
  return acc;
}

MultiPoly MultiPoly::substitute_affine(const RatMatrix& l, const RatVector& b) const {
  assert(l.rows() == vars_ && b.size() == vars_);
  const std::size_t new_vars = l.cols();

  /* Linear replacement for each old variable, with powers memoized: terms of
   * degree d touch at most d products per variable. */
  std::vector<MultiPoly> lin(vars_, MultiPoly(new_vars));
  for (std::size_t i = 0; i < vars_; ++i) {
    MultiPoly p = MultiPoly::constant(new_vars, b[i]);
    for (std::size_t j = 0; j < new_vars; ++j)
      if (l.at(i, j) != 0)
        p = mp_add(p, mp_scale(l.at(i, j), MultiPoly::variable(new_vars, j)));
    lin[i] = p;
  }
  std::vector<std::vector<MultiPoly>> powers(vars_);
  for (std::size_t i = 0; i < vars_; ++i)
    powers[i].push_back(MultiPoly::constant(new_vars, Rational(1)));

  MultiPoly out(new_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(new_vars, c);
    for (std::size_t i = 0; i < vars_; ++i) {
      while (powers[i].size() <= e[i])
        powers[i].push_back(mp_mul(powers[i].back(), lin[i]));
      if (e[i] > 0) term = mp_mul(term, powers[i][e[i]]);
    }
    out = mp_add(out, term);
  }
  return out;
}

MultiPoly MultiPoly::integer_normalized() const {
  if (terms_.empty()) return *this;
  RatVector coeffs;
  coeffs.reserve(terms_.size());
  for (const auto& [e, c] : terms_) coeffs.push_back(c);
  const RatVector canon = canonical_integer_direction(coeffs);
  const Rational scale = canon.front() / coeffs.front();
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * scale);
  return out;
}

std::optional<std::pair<RatVector, Rational>> MultiPoly::as_affine_form() const {
  RatVector a(vars_, Rational(0));
  Rational a0 = 0;
  for (const auto& [e, c] : terms_) {
    long d = 0;
    std::size_t var = 0;
    for (std::size_t i = 0; i < vars_; ++i) {
      d += e[i];
      if (e[i] > 0) var = i;
    }
    if (d == 0) a0 = c;
    else if (d == 1) a[var] = c;
    else return std::nullopt;
  }
  return std::make_pair(std::move(a), a0);
}

/* -------------------------------------------------------------- set algebra */

Rel negate_rel(Rel r) {
  switch (r) {
    case Rel::lt: return Rel::ge;
    case Rel::le: return Rel::gt;
    case Rel::eq: return Rel::ne;
    case Rel::ne: return Rel::eq;
    case Rel::ge: return Rel::lt;
    case Rel::gt: return Rel::le;
  }
  return Rel::eq;
}

bool rel_holds(int sign, Rel r) {
  switch (r) {
    case Rel::lt: return sign < 0;
    case Rel::le: return sign <= 0;
    case Rel::eq: return sign == 0;
    case Rel::ne: return sign != 0;
    case Rel::ge: return sign >= 0;
    case Rel::gt: return sign > 0;
  }
  return false;
}

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::lt: return "<";
    case Rel::le: return "<=";
    case Rel::eq: return "=";
    case Rel::ne: return "!=";
    case Rel::ge: return ">=";
    case Rel::gt: return ">";
  }
  return "?";
}

SetNodePtr make_atom(MultiPoly p, Rel r) {
  auto n = std::make_shared<SetNode>();
  n->kind = SetNode::Kind::atom;
  n->atom = Atom{std::move(p), r};
  return n;
}

SetNodePtr make_and(std::vector<SetNodePtr> children) {
  assert(!children.empty());
  if (children.size() == 1) return children.front();
  auto n = std::make_shared<SetNode>();
  n->kind = SetNode::Kind::conj;
  n->children = std::move(children);
  return n;
}

SetNodePtr make_or(std::vector<SetNodePtr> children) {
  assert(!children.empty());
  if (children.size() == 1) return children.front();
  auto n = std::make_shared<SetNode>();
  n->kind = SetNode::Kind::disj;
  n->children = std::move(children);
  return n;
}

SetNodePtr make_not(SetNodePtr child) {
  auto n = std::make_shared<SetNode>();
  n->kind = SetNode::Kind::neg;
  n->children = {std::move(child)};
  return n;
}

SemialgebraicSet ambient_set(std::size_t variables) {
  SemialgebraicSet t;
  t.variables = variables;
  t.root = make_atom(MultiPoly(variables), Rel::eq);
  return t;
}

int eval_sign(const MultiPoly& p, const RatVector& x) {
  const Rational v = p.eval(x);
  return v < 0 ? -1 : (v > 0 ? 1 : 0);
}

namespace {

bool member_node(const SetNodePtr& n, const RatVector& x) {
  switch (n->kind) {
    case SetNode::Kind::atom:
      return rel_holds(eval_sign(n->atom.poly, x), n->atom.rel);
    case SetNode::Kind::conj:
      for (const auto& c : n->children)
        if (!member_node(c, x)) return false;
      return true;
    case SetNode::Kind::disj:
      for (const auto& c : n->children)
        if (member_node(c, x)) return true;
      return false;
    case SetNode::Kind::neg:
      return !member_node(n->children.front(), x);
  }
  return false;
}

SetNodePtr map_atoms(const SetNodePtr& n, const RatMatrix& l, const RatVector& b) {
  if (n->kind == SetNode::Kind::atom)
    return make_atom(n->atom.poly.substitute_affine(l, b), n->atom.rel);
  auto m = std::make_shared<SetNode>();
  m->kind = n->kind;
  m->children.reserve(n->children.size());
  for (const auto& c : n->children) m->children.push_back(map_atoms(c, l, b));
  return m;
}

constexpr std::size_t kDnfBranchCap = 4096;

using Branch = std::vector<Atom>;

/* Negation-normal DNF with a hard branch cap; nullopt when the expansion
 * would exceed it. */
std::optional<std::vector<Branch>> dnf(const SetNodePtr& n, bool positive) {
  switch (n->kind) {
    case SetNode::Kind::atom: {
      Atom a = n->atom;
      if (!positive) a.rel = negate_rel(a.rel);
      return std::vector<Branch>{{a}};
    }
    case SetNode::Kind::neg:
      return dnf(n->children.front(), !positive);
    case SetNode::Kind::conj:
    case SetNode::Kind::disj: {
      const bool distribute = (n->kind == SetNode::Kind::conj) == positive;
      std::vector<Branch> acc;
      if (distribute) {
        acc.push_back({});
        for (const auto& c : n->children) {
          auto sub = dnf(c, positive);
          if (!sub) return std::nullopt;
          std::vector<Branch> next;
          if (acc.size() * sub->size() > kDnfBranchCap) return std::nullopt;
          next.reserve(acc.size() * sub->size());
          for (const auto& left : acc)
            for (const auto& right : *sub) {
              Branch joined = left;
              joined.insert(joined.end(), right.begin(), right.end());
              next.push_back(std::move(joined));
            }
          acc = std::move(next);
        }
      } else {
        for (const auto& c : n->children) {
          auto sub = dnf(c, positive);
          if (!sub) return std::nullopt;
          if (acc.size() + sub->size() > kDnfBranchCap) return std::nullopt;
          acc.insert(acc.end(), sub->begin(), sub->end());
        }
      }
      return acc;
    }
  }
  return std::nullopt;
}

/* Key for deduplicating affine rows (a | b) up to positive scaling. */
std::vector<std::string> row_key(const RatVector& a, const Rational& b) {
  RatVector joined = a;
  joined.push_back(b);
  joined = canonical_integer_direction(joined);
  std::vector<std::string> key;
  key.reserve(joined.size());
  for (const auto& x : joined) key.push_back(x.str());
  return key;
}

} // namespace

bool member(const SemialgebraicSet& t, const RatVector& x) {
  assert(x.size() == t.variables);
  return member_node(t.root, x);
}

SemialgebraicSet affine_preimage(const SemialgebraicSet& t, const RatMatrix& l,
                                 const RatVector& b) {
  assert(l.rows() == t.variables && b.size() == t.variables);
  SemialgebraicSet out;
  out.variables = l.cols();
  out.root = map_atoms(t.root, l, b);
  return out;
}

RatMatrix syntactic_hull(const SemialgebraicSet& t) {
  const std::size_t k = t.variables;
  std::set<std::vector<std::string>> chosen_keys;
  std::vector<RatVector> rows;

  const auto add_row = [&](const RatVector& a) {
    if (vec_is_zero(a)) return;
    const RatVector canon = canonical_integer_direction(a);
    if (chosen_keys.insert(row_key(canon, Rational(0))).second) rows.push_back(canon);
  };

  if (auto branches = dnf(t.root, true); branches && !branches->empty()) {
    /* Linear zero-constant '='-forms per branch, intersected across branches. */
    std::vector<std::set<std::vector<std::string>>> per_branch;
    std::vector<RatVector> first_branch_rows;
    for (std::size_t bi = 0; bi < branches->size(); ++bi) {
      std::set<std::vector<std::string>> forms;
      for (const Atom& at : (*branches)[bi]) {
        if (at.rel != Rel::eq) continue;
        const auto aff = at.poly.as_affine_form();
        if (!aff || aff->second != 0 || vec_is_zero(aff->first)) continue;
        const RatVector canon = canonical_integer_direction(aff->first);
        forms.insert(row_key(canon, Rational(0)));
        if (bi == 0) first_branch_rows.push_back(canon);
      }
      per_branch.push_back(std::move(forms));
    }
    for (const RatVector& row : first_branch_rows) {
      const auto key = row_key(row, Rational(0));
      bool everywhere = true;
      for (std::size_t bi = 1; bi < per_branch.size() && everywhere; ++bi)
        everywhere = per_branch[bi].count(key) > 0;
      if (everywhere) add_row(row);
    }
  }

  if (t.declared_hull)
    for (std::size_t i = 0; i < t.declared_hull->rows(); ++i) add_row(t.declared_hull->row(i));

  RatMatrix h(rows.size(), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) h.at(i, j) = rows[i][j];
  return h;
}

std::optional<AffineFlat> common_affine_flat(const SemialgebraicSet& t) {
  const std::size_t k = t.variables;
  auto branches = dnf(t.root, true);
  if (!branches) return std::nullopt;

  /* Rows (a | b) meaning a.x = b, per branch; branches that contain an
   * impossible constant atom describe the empty set and impose nothing on the
   * union. If every branch is impossible the set itself is empty, which the
   * single unsatisfiable row 0 = 1 communicates exactly. */
  std::vector<std::set<std::vector<std::string>>> per_branch;
  std::vector<std::vector<std::pair<RatVector, Rational>>> branch_rows;
  for (const Branch& br : *branches) {
    bool impossible = false;
    std::set<std::vector<std::string>> forms;
    std::vector<std::pair<RatVector, Rational>> rows;
    for (const Atom& at : br) {
      const auto aff = at.poly.as_affine_form();
      if (aff && vec_is_zero(aff->first)) {
        const int sign = aff->second < 0 ? -1 : (aff->second > 0 ? 1 : 0);
        if (!rel_holds(sign, at.rel)) impossible = true;
        continue;
      }
      if (at.rel != Rel::eq || !aff) continue;
      RatVector a = aff->first;
      const Rational b = -aff->second;
      RatVector joined = a;
      joined.push_back(b);
      joined = canonical_integer_direction(joined);
      a.assign(joined.begin(), joined.end() - 1);
      forms.insert(row_key(aff->first, -aff->second));
      rows.emplace_back(std::move(a), joined.back());
    }
    if (impossible) continue;
    per_branch.push_back(std::move(forms));
    branch_rows.push_back(std::move(rows));
  }

  AffineFlat flat;
  if (per_branch.empty()) {
    flat.lhs = RatMatrix(1, k);
    flat.rhs = {Rational(1)};
    return flat;
  }

  std::vector<RatVector> lhs_rows;
  RatVector rhs;
  std::set<std::vector<std::string>> chosen;
  const auto add_row = [&](const RatVector& a, const Rational& b) {
    if (chosen.insert(row_key(a, b)).second) {
      lhs_rows.push_back(a);
      rhs.push_back(b);
    }
  };

  for (const auto& [a, b] : branch_rows.front()) {
    const auto key = row_key(a, b);
    bool everywhere = true;
    for (std::size_t bi = 1; bi < per_branch.size() && everywhere; ++bi)
      everywhere = per_branch[bi].count(key) > 0;
    if (everywhere) add_row(a, b);
  }
  if (t.declared_hull)
    for (std::size_t i = 0; i < t.declared_hull->rows(); ++i) {
      const RatVector row = t.declared_hull->row(i);
      if (!vec_is_zero(row)) add_row(canonical_integer_direction(row), Rational(0));
    }

  flat.lhs = RatMatrix(lhs_rows.size(), k);
  for (std::size_t i = 0; i < lhs_rows.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) flat.lhs.at(i, j) = lhs_rows[i][j];
  flat.rhs = std::move(rhs);
  return flat;
}

SemialgebraicSet ball_intersect(const SemialgebraicSet& t, const Rational& eps_sq) {
  MultiPoly ball(t.variables);
  for (std::size_t i = 0; i < t.variables; ++i) {
    MultiPoly::Exponents e(t.variables, 0);
    e[i] = 2;
    ball.add_term(e, Rational(1));
  }
  ball.add_term(MultiPoly::Exponents(t.variables, 0), -eps_sq);

  SemialgebraicSet out;
  out.variables = t.variables;
  out.root = make_and({t.root, make_atom(std::move(ball), Rel::lt)});
  out.declared_hull = t.declared_hull;
  return out;
}

namespace {

bool atoms_homogeneous(const SetNodePtr& n, const RatMatrix& id, const RatVector& s) {
  if (n->kind == SetNode::Kind::atom)
    return n->atom.poly.substitute_affine(id, s).is_homogeneous();
  for (const auto& c : n->children)
    if (!atoms_homogeneous(c, id, s)) return false;
  return true;
}

} // namespace

bool is_s_homogeneous(const SemialgebraicSet& t, const RatVector& s) {
  assert(s.size() == t.variables);
  return atoms_homogeneous(t.root, RatMatrix::identity(t.variables), s);
}

/* --------------------------------------------------------------- emptiness */

namespace {

struct Interval {
  Rational lo, hi;
};

Interval iv_point(const Rational& x) { return {x, x}; }

Interval iv_add(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

Interval iv_mul(const Interval& a, const Interval& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Interval r{c[0], c[0]};
  for (int i = 1; i < 4; ++i) {
    if (c[i] < r.lo) r.lo = c[i];
    if (c[i] > r.hi) r.hi = c[i];
  }
  return r;
}

Interval iv_pow(const Interval& a, std::uint32_t n) {
  Interval r = iv_point(Rational(1));
  for (std::uint32_t i = 0; i < n; ++i) r = iv_mul(r, a);
  /* Even powers never dip below zero even when 0 is interior. */
  if (n % 2 == 0 && a.lo < 0 && a.hi > 0 && r.lo < 0) r.lo = 0;
  return r;
}

/* An atom interval refutes its relation when no value in [lo, hi] satisfies
 * it. Closed-interval evaluation makes this sound for open relations too. */
bool interval_refutes(const Interval& iv, Rel r) {
  switch (r) {
    case Rel::lt: return iv.lo >= 0;
    case Rel::le: return iv.lo > 0;
    case Rel::eq: return iv.lo > 0 || iv.hi < 0;
    case Rel::ne: return iv.lo == 0 && iv.hi == 0;
    case Rel::ge: return iv.hi < 0;
    case Rel::gt: return iv.hi <= 0;
  }
  return false;
}

/* Least q-ish rational u with u^2 >= r, r >= 0: ceil(sqrt(p q)) / q. */
Rational sqrt_upper(const Rational& r) {
  assert(r >= 0);
  const Integer pq = numerator(r) * denominator(r);
  Integer root = sqrt(pq);
  if (root * root < pq) ++root;
  return Rational(root, denominator(r));
}

/* Per-variable bounds harvested from ball-shaped atoms of a branch:
 * sum c_i x_i^2 + c0 < 0 (or <=) with all c_i > 0, c0 < 0 bounds every
 * participating variable by x_i^2 <= -c0 / c_i. */
std::vector<std::optional<Interval>> branch_box(const std::vector<Atom>& branch,
                                                std::size_t k) {
  std::vector<std::optional<Interval>> box(k);
  for (const Atom& at : branch) {
    if (at.rel != Rel::lt && at.rel != Rel::le) continue;
    Rational c0 = 0;
    std::vector<std::pair<std::size_t, Rational>> squares;
    bool shape_ok = true;
    for (const auto& [e, c] : at.poly.terms()) {
      std::size_t var = 0;
      long total = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        total += e[i];
        if (e[i] > 0) var = i;
      }
      if (total == 0) c0 = c;
      else if (total == 2 && *std::max_element(e.begin(), e.end()) == 2 && c > 0)
        squares.emplace_back(var, c);
      else {
        shape_ok = false;
        break;
      }
    }
    if (!shape_ok || c0 >= 0 || squares.empty()) continue;
    for (const auto& [var, c] : squares) {
      const Rational u = sqrt_upper(-c0 / c);
      Interval iv{-u, u};
      if (!box[var] || iv.hi < box[var]->hi) box[var] = iv;
    }
  }
  return box;
}

/* Possible signs of a polynomial constrained by a relation, as a bitmask
 * {negative, zero, positive}. Two atoms over the identical polynomial whose
 * masks do not intersect make their branch unsatisfiable outright — the
 * shape a negated conjunction produces when it meets the conjunction again
 * (e.g. the ball bound and its own negation). */
unsigned rel_sign_mask(Rel r) {
  constexpr unsigned kNeg = 1, kZero = 2, kPos = 4;
  switch (r) {
    case Rel::lt: return kNeg;
    case Rel::le: return kNeg | kZero;
    case Rel::eq: return kZero;
    case Rel::ne: return kNeg | kPos;
    case Rel::ge: return kZero | kPos;
    case Rel::gt: return kPos;
  }
  return kNeg | kZero | kPos;
}

bool branch_sign_contradiction(const Branch& br) {
  for (std::size_t i = 0; i < br.size(); ++i)
    for (std::size_t j = i + 1; j < br.size(); ++j)
      if (br[i].poly == br[j].poly &&
          (rel_sign_mask(br[i].rel) & rel_sign_mask(br[j].rel)) == 0)
        return true;
  return false;
}

std::optional<Interval> interval_eval(const MultiPoly& p,
                                      const std::vector<std::optional<Interval>>& box) {
  Interval acc = iv_point(Rational(0));
  for (const auto& [e, c] : p.terms()) {
    Interval term = iv_point(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!box[i]) return std::nullopt;
      term = iv_mul(term, iv_pow(*box[i], e[i]));
    }
    acc = iv_add(acc, term);
  }
  return acc;
}

void push_candidate(std::vector<RatVector>& out, RatVector v) {
  out.push_back(std::move(v));
}

/* Structured rational sample points: the origin, solutions of each branch's
 * affine equality subsystem (shrunk toward the origin when homogeneous), and
 * a dyadic grid whose resolution backs off as the dimension grows. */
std::vector<RatVector> sample_candidates(const SemialgebraicSet& t,
                                         const std::optional<std::vector<Branch>>& branches) {
  const std::size_t k = t.variables;
  std::vector<RatVector> cands;
  push_candidate(cands, RatVector(k, Rational(0)));
  if (k == 0) return cands;

  if (branches) {
    for (const Branch& br : *branches) {
      std::vector<RatVector> rows;
      RatVector rhs;
      for (const Atom& at : br) {
        if (at.rel != Rel::eq) continue;
        const auto aff = at.poly.as_affine_form();
        if (!aff || vec_is_zero(aff->first)) continue;
        rows.push_back(aff->first);
        rhs.push_back(-aff->second);
      }
      if (rows.empty()) continue;
      RatMatrix lhs(rows.size(), k);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) lhs.at(i, j) = rows[i][j];
      const auto sol = solve(lhs, rhs);
      if (!sol) continue;
      push_candidate(cands, *sol);
      if (vec_is_zero(rhs) && !vec_is_zero(*sol)) {
        /* Homogeneous solutions scale; shrink into any ball constraint. */
        RatVector scaled = *sol;
        for (int j = 0; j < 24; ++j) {
          scaled = vec_scale(Rational(1, 2), scaled);
          push_candidate(cands, scaled);
        }
      }
    }
  }

  static const Rational grid9[] = {Rational(0),      Rational(1, 2),  Rational(-1, 2),
                                   Rational(1),      Rational(-1),    Rational(1, 4),
                                   Rational(-1, 4),  Rational(3, 4),  Rational(-3, 4)};
  static const Rational grid5[] = {Rational(0), Rational(1, 2), Rational(-1, 2),
                                   Rational(1), Rational(-1)};
  static const Rational grid3[] = {Rational(0), Rational(1, 2), Rational(-1, 2)};

  const Rational* vals = grid3;
  std::size_t nvals = 3;
  if (k <= 2) {
    vals = grid9;
    nvals = 9;
  } else if (k <= 4) {
    vals = grid5;
    nvals = 5;
  } else if (k > 6) {
    /* Axis points only beyond 6 variables. */
    for (std::size_t i = 0; i < k; ++i)
      for (const Rational& v : {Rational(1, 2), Rational(-1, 2), Rational(1), Rational(-1)}) {
        RatVector x(k, Rational(0));
        x[i] = v;
        push_candidate(cands, std::move(x));
      }
    return cands;
  }

  RatVector x(k, Rational(0));
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) x[i] = vals[idx[i]];
    push_candidate(cands, x);
    std::size_t i = 0;
    while (i < k && ++idx[i] == nvals) idx[i++] = 0;
    if (i == k) break;
  }
  return cands;
}

} // namespace

Emptiness emptiness(const SemialgebraicSet& t, std::optional<bool> hull_hint) {
  if (hull_hint && !*hull_hint) return {Emptiness::Kind::empty, std::nullopt};

  const auto branches = dnf(t.root, true);

  std::vector<RatVector> cands = sample_candidates(t, branches);
  for (RatVector& cand : cands)
    if (member(t, cand)) return {Emptiness::Kind::nonempty, std::move(cand)};

  if (branches) {
    bool all_refuted = true;
    for (const Branch& br : *branches) {
      bool refuted = branch_sign_contradiction(br);
      if (!refuted) {
        const auto box = branch_box(br, t.variables);
        for (const Atom& at : br) {
          const auto iv = interval_eval(at.poly, box);
          if (iv && interval_refutes(*iv, at.rel)) {
            refuted = true;
            break;
          }
        }
      }
      if (!refuted) {
        all_refuted = false;
        break;
      }
    }
    if (all_refuted) return {Emptiness::Kind::empty, std::nullopt};
  }

  return {Emptiness::Kind::unknown, std::nullopt};
}

} // namespace distill::semialg
