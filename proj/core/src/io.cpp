#include "distill/io.hpp"

#include "distill/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace distill::io {

using nlohmann::json;

namespace {

/* ------------------------------------------------------------- reading ---- */

const json& need(const json& j, const char* key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing field \"" + key + "\"");
  return *it;
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

std::uint64_t need_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned())
    throw ParseError(path + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

const json& need_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

Rational read_rational(const json& j, const std::string& path) {
  return parse_rational(need_string(j, path), path);
}

RatVector read_vector(const json& j, const std::string& path) {
  need_array(j, path);
  RatVector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(read_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

RatMatrix read_matrix(const json& j, const std::string& path, std::size_t cols_hint) {
  need_array(j, path);
  std::vector<RatVector> rows;
  std::size_t cols = cols_hint;
  for (std::size_t i = 0; i < j.size(); ++i) {
    RatVector row = read_vector(j[i], path + "[" + std::to_string(i) + "]");
    if (i == 0 && j.size() > 0 && cols_hint == SIZE_MAX) cols = row.size();
    if (row.size() != cols)
      throw ParseError(path + "[" + std::to_string(i) + "]: expected " +
                       std::to_string(cols) + " entries");
    rows.push_back(std::move(row));
  }
  if (cols == SIZE_MAX) cols = 0;
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = rows[i][c];
  return m;
}

semialg::MultiPoly read_poly(const json& j, std::size_t vars, const std::string& path) {
  need_array(j, path);
  semialg::MultiPoly p(vars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    if (!j[t].is_object()) throw ParseError(tp + ": expected a term object");
    const Rational coeff = read_rational(need(j[t], "coeff", tp), tp + ".coeff");
    const json& je = need_array(need(j[t], "exps", tp), tp + ".exps");
    if (je.size() != vars)
      throw ParseError(tp + ".exps: expected " + std::to_string(vars) + " exponents");
    semialg::MultiPoly::Exponents e(vars);
    for (std::size_t i = 0; i < vars; ++i)
      e[i] = static_cast<std::uint32_t>(need_uint(je[i], tp + ".exps[" + std::to_string(i) + "]"));
    p.add_term(e, coeff);
  }
  return p;
}

semialg::Rel read_rel(const json& j, const std::string& path) {
  const std::string s = need_string(j, path);
  if (s == "<") return semialg::Rel::lt;
  if (s == "<=") return semialg::Rel::le;
  if (s == "=") return semialg::Rel::eq;
  if (s == "!=") return semialg::Rel::ne;
  if (s == ">=") return semialg::Rel::ge;
  if (s == ">") return semialg::Rel::gt;
  throw ParseError(path + ": unknown relation \"" + s + "\"");
}

semialg::SetNodePtr read_node(const json& j, std::size_t vars, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected a set node object");
  if (j.contains("poly")) {
    return semialg::make_atom(read_poly(j["poly"], vars, path + ".poly"),
                              read_rel(need(j, "rel", path), path + ".rel"));
  }
  for (const char* kind : {"and", "or", "not"}) {
    if (!j.contains(kind)) continue;
    const json& kids = need_array(j[kind], path + "." + kind);
    if (kids.empty()) throw ParseError(path + "." + kind + ": needs at least one child");
    std::vector<semialg::SetNodePtr> children;
    children.reserve(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i)
      children.push_back(
          read_node(kids[i], vars, path + "." + kind + "[" + std::to_string(i) + "]"));
    if (kind[0] == 'n') {
      if (children.size() != 1)
        throw ParseError(path + ".not: takes exactly one child");
      return semialg::make_not(children.front());
    }
    return kind[0] == 'a' ? semialg::make_and(std::move(children))
                          : semialg::make_or(std::move(children));
  }
  throw ParseError(path + ": expected one of \"poly\", \"and\", \"or\", \"not\"");
}

semialg::SemialgebraicSet read_target(const json& j, std::size_t vars,
                                      const std::string& path) {
  semialg::SemialgebraicSet t;
  t.variables = vars;
  t.root = read_node(j, vars, path);
  if (j.is_object() && j.contains("hull"))
    t.declared_hull = read_matrix(j["hull"], path + ".hull", vars);
  return t;
}

automata::StateSet read_state_set(const json& j, const std::string& path) {
  need_array(j, path);
  automata::StateSet s;
  s.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    s.push_back(static_cast<std::uint32_t>(need_uint(j[i], path + "[" + std::to_string(i) + "]")));
  return s;
}

automata::MullerAutomaton read_spec(const json& j, std::size_t num_targets,
                                    const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  automata::MullerAutomaton a;
  a.num_states = static_cast<std::uint32_t>(need_uint(need(j, "states", path), path + ".states"));
  a.num_targets = static_cast<std::uint32_t>(num_targets);
  a.initial = static_cast<std::uint32_t>(need_uint(need(j, "initial", path), path + ".initial"));
  if (num_targets >= 31) throw ParseError(path + ": too many targets for bitmask letters");

  const json& jd = need_array(need(j, "delta", path), path + ".delta");
  if (jd.size() != a.num_states)
    throw ParseError(path + ".delta: expected one row per state");
  const std::size_t letters = std::size_t{1} << num_targets;
  a.delta.reserve(jd.size());
  for (std::size_t q = 0; q < jd.size(); ++q) {
    const std::string rp = path + ".delta[" + std::to_string(q) + "]";
    const json& row = need_array(jd[q], rp);
    if (row.size() != letters)
      throw ParseError(rp + ": expected " + std::to_string(letters) + " entries");
    std::vector<std::uint32_t> drow;
    drow.reserve(letters);
    for (std::size_t l = 0; l < letters; ++l)
      drow.push_back(
          static_cast<std::uint32_t>(need_uint(row[l], rp + "[" + std::to_string(l) + "]")));
    a.delta.push_back(std::move(drow));
  }

  const json& ja = need_array(need(j, "acceptance", path), path + ".acceptance");
  for (std::size_t i = 0; i < ja.size(); ++i)
    a.acceptance.push_back(read_state_set(ja[i], path + ".acceptance[" + std::to_string(i) + "]"));

  if (j.contains("labels")) {
    const json& jl = need_array(j["labels"], path + ".labels");
    for (std::size_t i = 0; i < jl.size(); ++i)
      a.labels.push_back(read_state_set(jl[i], path + ".labels[" + std::to_string(i) + "]"));
    a.label_universe = static_cast<std::uint32_t>(
        need_uint(need(j, "label_universe", path), path + ".label_universe"));
  } else {
    a.label_universe = a.num_states;
    for (std::uint32_t q = 0; q < a.num_states; ++q) a.labels.push_back({q});
  }

  try {
    automata::validate(a);
  } catch (const ValidationError& e) {
    throw ParseError(path + ": " + e.what());
  }
  return a;
}

/* ------------------------------------------------------------- writing ---- */

json write_vector(const RatVector& v) {
  json j = json::array();
  for (const Rational& x : v) j.push_back(rat_to_string(x));
  return j;
}

json write_matrix(const RatMatrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(write_vector(m.row(i)));
  return j;
}

json write_node(const semialg::SetNodePtr& n) {
  using semialg::SetNode;
  if (n->kind == SetNode::Kind::atom) {
    json terms = json::array();
    for (const auto& [e, c] : n->atom.poly.terms()) {
      json exps = json::array();
      for (std::uint32_t x : e) exps.push_back(x);
      terms.push_back({{"coeff", rat_to_string(c)}, {"exps", std::move(exps)}});
    }
    return {{"poly", std::move(terms)}, {"rel", semialg::rel_symbol(n->atom.rel)}};
  }
  json kids = json::array();
  for (const auto& c : n->children) kids.push_back(write_node(c));
  const char* key = n->kind == SetNode::Kind::conj ? "and"
                    : n->kind == SetNode::Kind::disj ? "or"
                                                     : "not";
  return {{key, std::move(kids)}};
}

json write_target(const semialg::SemialgebraicSet& t) {
  json j = write_node(t.root);
  if (t.declared_hull && t.declared_hull->rows() > 0)
    j["hull"] = write_matrix(*t.declared_hull);
  return j;
}

json write_state_set(const automata::StateSet& s) {
  json j = json::array();
  for (std::uint32_t x : s) j.push_back(x);
  return j;
}

json write_spec(const automata::MullerAutomaton& a) {
  json j;
  j["states"] = a.num_states;
  j["initial"] = a.initial;
  json delta = json::array();
  for (const auto& row : a.delta) {
    json r = json::array();
    for (std::uint32_t x : row) r.push_back(x);
    delta.push_back(std::move(r));
  }
  j["delta"] = std::move(delta);
  json acc = json::array();
  for (const auto& s : a.acceptance) acc.push_back(write_state_set(s));
  j["acceptance"] = std::move(acc);

  bool identity_labels = a.label_universe == a.num_states;
  for (std::uint32_t q = 0; identity_labels && q < a.num_states; ++q)
    identity_labels = a.labels[q] == automata::StateSet{q};
  if (!identity_labels) {
    json labels = json::array();
    for (const auto& s : a.labels) labels.push_back(write_state_set(s));
    j["labels"] = std::move(labels);
    j["label_universe"] = a.label_universe;
  }
  return j;
}

} // namespace

InstanceDocument parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document: expected a JSON object");

  InstanceDocument doc;
  const std::string kind = need_string(need(j, "kind", "document"), "kind");
  if (kind == "markov") doc.kind = InstanceDocument::Kind::markov;
  else if (kind == "lds") doc.kind = InstanceDocument::Kind::lds;
  else throw ParseError("kind: expected \"markov\" or \"lds\"");

  doc.matrix = read_matrix(need(j, "matrix", "document"), "matrix", SIZE_MAX);
  if (doc.matrix.rows() != doc.matrix.cols())
    throw ParseError("matrix: must be square");
  doc.initial = read_vector(need(j, "initial", "document"), "initial");
  if (doc.initial.size() != doc.matrix.rows())
    throw ParseError("initial: length must match the matrix order");

  const json& jt = need_array(need(j, "targets", "document"), "targets");
  for (std::size_t i = 0; i < jt.size(); ++i)
    doc.targets.push_back(
        read_target(jt[i], doc.matrix.rows(), "targets[" + std::to_string(i) + "]"));

  if (j.contains("intrinsic_dim")) {
    const json& ji = need_array(j["intrinsic_dim"], "intrinsic_dim");
    if (ji.size() != doc.targets.size())
      throw ParseError("intrinsic_dim: must have one entry per target");
    for (std::size_t i = 0; i < ji.size(); ++i) {
      if (ji[i].is_null()) doc.intrinsic_dims.emplace_back(std::nullopt);
      else
        doc.intrinsic_dims.emplace_back(static_cast<std::uint32_t>(
            need_uint(ji[i], "intrinsic_dim[" + std::to_string(i) + "]")));
    }
  }

  doc.spec = read_spec(need(j, "spec", "document"), doc.targets.size(), "spec");
  return doc;
}

InstanceDocument load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw ParseError(path + ": read failure");
  return parse_instance(buf.str());
}

std::string serialize_instance(const InstanceDocument& doc) {
  json j;
  j["kind"] = doc.kind == InstanceDocument::Kind::markov ? "markov" : "lds";
  j["matrix"] = write_matrix(doc.matrix);
  j["initial"] = write_vector(doc.initial);
  json targets = json::array();
  for (const auto& t : doc.targets) targets.push_back(write_target(t));
  j["targets"] = std::move(targets);
  bool any_intrinsic = false;
  for (const auto& d : doc.intrinsic_dims) any_intrinsic = any_intrinsic || d.has_value();
  if (any_intrinsic) {
    json ji = json::array();
    for (const auto& d : doc.intrinsic_dims) {
      if (d) ji.push_back(*d);
      else ji.push_back(nullptr);
    }
    j["intrinsic_dim"] = std::move(ji);
  }
  j["spec"] = write_spec(doc.spec);
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(tmp + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out.good()) {
      std::remove(tmp.c_str());
      throw ParseError(tmp + ": write failure");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ParseError(path + ": atomic rename failed");
  }
}

reduce::StochasticInstance to_stochastic(const InstanceDocument& doc) {
  if (doc.kind != InstanceDocument::Kind::markov)
    throw ValidationError("document: expected kind \"markov\"");
  reduce::StochasticInstance inst;
  inst.M = doc.matrix;
  inst.mu = doc.initial;
  inst.targets = doc.targets;
  inst.spec = doc.spec;
  inst.intrinsic_dims = doc.intrinsic_dims;
  reduce::validate(inst);
  return inst;
}

embed::LdsInstance to_lds(const InstanceDocument& doc) {
  if (doc.kind != InstanceDocument::Kind::lds)
    throw ValidationError("document: expected kind \"lds\"");
  embed::LdsInstance lds;
  lds.A = doc.matrix;
  lds.v = doc.initial;
  lds.targets = doc.targets;
  lds.spec = doc.spec;
  return lds;
}

InstanceDocument from_stochastic(const reduce::StochasticInstance& inst) {
  InstanceDocument doc;
  doc.kind = InstanceDocument::Kind::markov;
  doc.matrix = inst.M;
  doc.initial = inst.mu;
  doc.targets = inst.targets;
  doc.spec = inst.spec;
  doc.intrinsic_dims = inst.intrinsic_dims;
  return doc;
}

InstanceDocument from_reduced(const reduce::ReducedInstance& red) {
  InstanceDocument doc;
  doc.kind = InstanceDocument::Kind::lds;
  doc.matrix = red.A;
  doc.initial = mat_apply(mat_pow(red.A, static_cast<unsigned long long>(red.n0)), red.v);
  doc.targets = red.targets3;
  doc.spec = red.spec3;
  return doc;
}

} // namespace distill::io
