#pragma once

#include "distill/automata.hpp"
#include "distill/embed.hpp"
#include "distill/matrix.hpp"
#include "distill/rational.hpp"
#include "distill/reduce.hpp"
#include "distill/semialg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace distill::io {

/* The one on-disk instance format, shared by both kinds of system. Every
 * number is a "p/q" string: no binary floating point anywhere in the
 * toolchain. Markov documents carry a column-stochastic matrix and a
 * distribution; LDS documents carry an arbitrary rational matrix and
 * vector. Targets are set trees with optional declared hull rows, the
 * specification a deterministic Muller automaton with letters indexed by
 * target bitmask. */
struct InstanceDocument {
  enum class Kind { markov, lds };
  Kind kind = Kind::markov;
  RatMatrix matrix;
  RatVector initial;
  std::vector<semialg::SemialgebraicSet> targets;
  automata::MullerAutomaton spec;
  std::vector<std::optional<std::uint32_t>> intrinsic_dims;  // empty when absent
};

/* Throws ParseError with a JSON-path diagnostic on malformed input; the
 * structural automaton checks run too, so a parsed document is always
 * internally consistent. */
InstanceDocument parse_instance(const std::string& text);

/* Reads and parses a file; file-system failures also raise ParseError. */
InstanceDocument load_instance(const std::string& path);

/* Canonical serialisation: rationals normalised, polynomial terms in the
 * fixed term order, identity label sets elided. parse(serialize(d)) equals
 * d up to those canonical forms. */
std::string serialize_instance(const InstanceDocument& doc);

/* Writes content to path via a temporary file and an atomic rename, so a
 * failed run never leaves a partial document behind. */
void write_atomic(const std::string& path, const std::string& content);

/* Kind-checked conversions. to_stochastic enforces the Markov invariants
 * (ValidationError), to_lds only shape. */
reduce::StochasticInstance to_stochastic(const InstanceDocument& doc);
embed::LdsInstance to_lds(const InstanceDocument& doc);

InstanceDocument from_stochastic(const reduce::StochasticInstance& inst);

/* The reduced system as a standalone LDS document: the initial vector is
 * advanced to A^n0 v, where the ball certificate starts holding, so the
 * document's word is accepted by its own specification without any side
 * channel. */
InstanceDocument from_reduced(const reduce::ReducedInstance& red);

} // namespace distill::io
