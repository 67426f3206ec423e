/* distill — exact reduction, decision, and embedding for Markov-chain
 * model-checking instances viewed as distribution transformers.
 *
 * Subcommands
 *   analyze   <file>            spectral profile + stochastic spectrum checks
 *   reduce    <file> [--out f]  three-stage reduction to an invertible LDS
 *   decide    <file>            reduce, then decide the constant-tail fragments
 *   embed     <file>            LDS -> strictly positive ergodic Markov chain
 *   simulate  <file>            exact distribution/letter table
 *
 * Reports are JSON on stdout. For analyze/decide/simulate, --out stores the
 * report; for reduce/embed it stores the transformed instance document (the
 * report then references the path instead of inlining the document). All file
 * writes are atomic: compute first, then temp-file + rename.
 *
 * Exit codes: 0 ok, 1 reduction failure, 2 parse error, 3 invariant
 * violation, 4 homogeneity violation. The environment variable DISTILL_MCAP
 * overrides the decay-certificate search cap.
 */

#include "distill/decide.hpp"
#include "distill/embed.hpp"
#include "distill/errors.hpp"
#include "distill/io.hpp"
#include "distill/reduce.hpp"
#include "distill/spectra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace distill;

/* ----------------------------------------------------------- json pieces -- */

json vec_json(const RatVector& v) {
  json j = json::array();
  for (const Rational& x : v) j.push_back(rat_to_string(x));
  return j;
}

json mat_json(const RatMatrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(vec_json(m.row(i)));
  return j;
}

json letters_json(const std::vector<automata::Letter>& w) {
  json j = json::array();
  for (automata::Letter l : w) j.push_back(l);
  return j;
}

json spectral_json(const spectra::SpectralProfile& p) {
  json factors = json::array();
  for (const auto& f : p.cyclo_factors)
    factors.push_back({{"order", f.order}, {"multiplicity", f.multiplicity}});
  return {{"charpoly", vec_json(p.charpoly.coeffs())},
          {"charpoly_pretty", p.charpoly.to_string()},
          {"zero_multiplicity", p.zero_mult},
          {"cyclotomic_factors", std::move(factors)},
          {"period", p.period_c},
          {"dynamical_dimension", p.dyn_dim}};
}

json decay_json(const spectra::DecayCertificate& d) {
  return {{"block_m", d.block_m},
          {"block_norm", rat_to_string(d.block_norm)},
          {"prefix_bound", rat_to_string(d.prefix_bound)},
          {"n0", d.n0}};
}

json certificate_json(const reduce::ReducedInstance& red) {
  const reduce::ReductionCertificate& c = red.certificate;
  json targets = json::array();
  for (const auto& t : c.dims)
    targets.push_back({{"index", t.index},
                       {"original", t.original},
                       {"phase", t.phase},
                       {"before_dim", t.before_dim},
                       {"after_dim", t.after_dim},
                       {"hull_available", t.hull_available},
                       {"drop_certified", t.drop_certified},
                       {"empty", t.empty}});
  return {{"ell", c.ell},
          {"c", c.c},
          {"n0", c.n0},
          {"base_targets", c.base_targets},
          {"prefix_letters", letters_json(c.prefix_letters)},
          {"dynamical_dimension", c.dyn_dim},
          {"eps_sq", rat_to_string(red.eps_sq)},
          {"decay", decay_json(red.decay)},
          {"targets", std::move(targets)}};
}

const char* empty3_name(decide::Empty3 e) {
  switch (e) {
    case decide::Empty3::empty: return "empty";
    case decide::Empty3::nonempty: return "nonempty";
    default: return "unknown";
  }
}

const char* status_name(decide::TargetStatus s) {
  switch (s) {
    case decide::TargetStatus::empty: return "empty";
    case decide::TargetStatus::const_true: return "const-true";
    default: return "varying";
  }
}

json classification_json(const decide::Classification& c) {
  json targets = json::array();
  for (const auto& t : c.targets) {
    json jt = {{"hull_subspace_dim", t.hull_subspace_dim},
               {"markov_low_dimensional", t.markov_low_dimensional},
               {"empty", empty3_name(t.empty)}};
    if (t.intrinsic_dim) jt["intrinsic_dim"] = *t.intrinsic_dim;
    else jt["intrinsic_dim"] = nullptr;
    targets.push_back(std::move(jt));
  }
  return {{"dynamical_dimension", c.dyn_dim},
          {"targets", std::move(targets)},
          {"all_low_dimensional", c.all_low_dimensional},
          {"tame_criterion_applies", c.tame_criterion_applies}};
}

json verdict_json(const decide::Verdict& v) {
  json statuses = json::array();
  for (decide::TargetStatus s : v.reduced_statuses) statuses.push_back(status_name(s));
  json j = {{"reduced_statuses", std::move(statuses)}};
  switch (v.kind) {
    case decide::Verdict::Kind::Accept: j["kind"] = "accept"; break;
    case decide::Verdict::Kind::Reject: j["kind"] = "reject"; break;
    default: j["kind"] = "reduced-only"; break;
  }
  if (v.kind != decide::Verdict::Kind::ReducedOnly)
    j["evidence"] = {{"prefix", letters_json(v.evidence.prefix)},
                     {"cycle", letters_json(v.evidence.cycle)}};
  return j;
}

void emit(const json& report, const std::string& out_path, bool report_to_out) {
  const std::string text = report.dump(2) + "\n";
  if (report_to_out && !out_path.empty()) io::write_atomic(out_path, text);
  std::cout << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

/* -------------------------------------------------------------- commands -- */

int cmd_analyze(const std::string& path, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const reduce::StochasticInstance inst = io::to_stochastic(io::load_instance(path));
  const spectra::SpectralProfile profile = spectra::analyze(inst.M);
  const spectra::StochasticSpectrumReport checks =
      spectra::validate_stochastic_spectrum(inst.M, profile);

  json order_checks = json::array();
  for (const auto& oc : checks.order_checks)
    order_checks.push_back({{"order", oc.order},
                            {"multiplicity", oc.multiplicity},
                            {"kernel_dim", oc.kernel_dim},
                            {"ok", oc.ok}});
  json report = {{"command", "analyze"},
                 {"input", path},
                 {"order", inst.M.rows()},
                 {"spectral", spectral_json(profile)},
                 {"stochastic_checks",
                  {{"unit_factor_present", checks.unit_factor_present},
                   {"unit_circle_semisimple", std::move(order_checks)},
                   {"residual_decays", checks.residual_decays},
                   {"residual_certificate", checks.residual_certificate
                                                ? decay_json(*checks.residual_certificate)
                                                : json(nullptr)},
                   {"all_ok", checks.all_ok()}}}};
  report["timing_ms"] = elapsed_ms(t0);
  emit(report, out_path, true);
  return 0;
}

int cmd_reduce(const std::string& path, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const reduce::StochasticInstance inst = io::to_stochastic(io::load_instance(path));
  const spectra::SpectralProfile profile = spectra::analyze(inst.M);
  const reduce::ReducedInstance red = reduce::reduce_full(inst);
  const std::string doc_text = io::serialize_instance(io::from_reduced(red));

  json report = {{"command", "reduce"},
                 {"input", path},
                 {"order", inst.M.rows()},
                 {"spectral", spectral_json(profile)},
                 {"certificate", certificate_json(red)},
                 {"reduced",
                  {{"order", red.A.rows()},
                   {"targets", red.targets3.size()},
                   {"spec_states", red.spec3.num_states}}}};
  if (out_path.empty()) report["document"] = json::parse(doc_text);
  else {
    io::write_atomic(out_path, doc_text);
    report["output"] = out_path;
  }
  report["timing_ms"] = elapsed_ms(t0);
  emit(report, "", false);
  return 0;
}

int cmd_decide(const std::string& path, const std::string& out_path, std::size_t horizon) {
  const auto t0 = std::chrono::steady_clock::now();
  const reduce::StochasticInstance inst = io::to_stochastic(io::load_instance(path));
  const spectra::SpectralProfile profile = spectra::analyze(inst.M);
  const reduce::ReducedInstance red = reduce::reduce_full(inst);
  const decide::Verdict verdict = decide::decide_fragment(red, inst);

  json report = {{"command", "decide"},
                 {"input", path},
                 {"order", inst.M.rows()},
                 {"spectral", spectral_json(profile)},
                 {"certificate", certificate_json(red)},
                 {"classification", classification_json(verdict.classification)},
                 {"verdict", verdict_json(verdict)}};
  if (horizon > 0) {
    const decide::BoundedCheck sim = decide::bounded_check(inst, horizon);
    json states = json::array();
    for (std::uint32_t q : sim.state_trace) states.push_back(q);
    report["simulation"] = {{"horizon", horizon},
                            {"letters", letters_json(sim.letters)},
                            {"states", std::move(states)}};
    const decide::CrossValidation cv = decide::cross_validate(inst, red, horizon);
    report["cross_validation"] = {{"ok", cv.ok}, {"window", cv.window}};
    if (!cv.ok) report["cross_validation"]["first_divergence"] = cv.first_divergence;
  }
  report["timing_ms"] = elapsed_ms(t0);
  emit(report, out_path, true);
  return 0;
}

RatVector load_stationary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_array()) throw ParseError(path + ": expected a JSON array of \"p/q\" strings");
  RatVector s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw ParseError(path + "[" + std::to_string(i) + "]: expected a \"p/q\" string");
    s.push_back(parse_rational(j[i].get<std::string>(),
                               path + "[" + std::to_string(i) + "]"));
  }
  return s;
}

int cmd_embed(const std::string& path, const std::string& out_path,
              const std::string& stationary_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const embed::LdsInstance lds = io::to_lds(io::load_instance(path));
  RatVector s;
  if (!stationary_path.empty()) s = load_stationary(stationary_path);
  else s.assign(lds.A.rows() + 1, Rational(1) / Rational(static_cast<long>(lds.A.rows() + 1)));

  const embed::Embedding emb = embed::embed_lds(s, lds.A, lds.v);
  const reduce::StochasticInstance chain = embed::embed_instance(lds, s);
  const std::string doc_text = io::serialize_instance(io::from_stochastic(chain));

  json report = {{"command", "embed"},
                 {"input", path},
                 {"order", chain.M.rows()},
                 {"stationary", vec_json(emb.s)},
                 {"eta", rat_to_string(emb.eta)},
                 {"rho", rat_to_string(emb.rho)},
                 {"matrix", mat_json(emb.M)},
                 {"initial", vec_json(emb.mu)}};
  if (out_path.empty()) report["document"] = json::parse(doc_text);
  else {
    io::write_atomic(out_path, doc_text);
    report["output"] = out_path;
  }
  report["timing_ms"] = elapsed_ms(t0);
  emit(report, "", false);
  return 0;
}

int cmd_simulate(const std::string& path, const std::string& out_path, std::size_t steps) {
  const auto t0 = std::chrono::steady_clock::now();
  const reduce::StochasticInstance inst = io::to_stochastic(io::load_instance(path));

  json rows = json::array();
  RatVector x = inst.mu;
  std::vector<automata::Letter> letters;
  for (std::size_t n = 0; n < steps; ++n) {
    const automata::Letter l = reduce::membership_letter(inst.targets, x);
    letters.push_back(l);
    rows.push_back({{"n", n}, {"distribution", vec_json(x)}, {"letter", l}});
    x = mat_apply(inst.M, x);
  }
  const automata::RunResult run = automata::run(inst.spec, letters);
  json states = json::array();
  for (std::uint32_t q : run.visited) states.push_back(q);

  json report = {{"command", "simulate"},
                 {"input", path},
                 {"steps", steps},
                 {"rows", std::move(rows)},
                 {"states", std::move(states)}};
  report["timing_ms"] = elapsed_ms(t0);
  emit(report, out_path, true);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "distill: exact reduction of Markov-chain model checking to invertible "
      "linear dynamical systems, fragment decisions, and the reverse embedding "
      "into ergodic chains."};
  app.require_subcommand(1);
  app.footer("Environment: DISTILL_MCAP overrides the decay-certificate search cap.\n"
             "Exit codes: 0 ok, 1 reduction failure, 2 parse error, "
             "3 invariant violation, 4 homogeneity violation.");

  std::string file, out_path, stationary_path;
  std::size_t horizon = 128;
  std::size_t steps = 16;

  CLI::App* analyze = app.add_subcommand("analyze", "Spectral profile and spectrum checks");
  analyze->add_option("file", file, "Markov instance document")->required();
  analyze->add_option("--out", out_path, "Also write the report to this path");

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "Reduce to an invertible LDS");
  reduce_cmd->add_option("file", file, "Markov instance document")->required();
  reduce_cmd->add_option("--out", out_path, "Write the reduced LDS document here");

  CLI::App* decide_cmd = app.add_subcommand("decide", "Reduce and decide the fragment");
  decide_cmd->add_option("file", file, "Markov instance document")->required();
  decide_cmd->add_option("--out", out_path, "Also write the report to this path");
  decide_cmd->add_option("--horizon", horizon,
                         "Bounded-check window in the report (0 = omit)")
      ->capture_default_str();

  CLI::App* embed_cmd = app.add_subcommand("embed", "Embed an LDS into an ergodic chain");
  embed_cmd->add_option("file", file, "LDS instance document")->required();
  embed_cmd->add_option("--out", out_path, "Write the Markov instance document here");
  embed_cmd->add_option("--stationary", stationary_path,
                        "JSON array of \"p/q\" entries for the stationary vector "
                        "(default: uniform)");

  CLI::App* simulate = app.add_subcommand("simulate", "Exact distribution table");
  simulate->add_option("file", file, "Markov instance document")->required();
  simulate->add_option("--out", out_path, "Also write the table to this path");
  simulate->add_option("--steps", steps, "Number of steps")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(file, out_path);
    if (reduce_cmd->parsed()) return cmd_reduce(file, out_path);
    if (decide_cmd->parsed()) return cmd_decide(file, out_path, horizon);
    if (embed_cmd->parsed()) return cmd_embed(file, out_path, stationary_path);
    if (simulate->parsed()) return cmd_simulate(file, out_path, steps);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const HomogeneityError& e) {
    std::cerr << "homogeneity violation: " << e.what() << "\n";
    return 4;
  } catch (const ReductionError& e) {
    std::cerr << "reduction failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
