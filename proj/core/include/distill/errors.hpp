#pragma once

#include <stdexcept>
#include <string>

namespace distill {

/* Error taxonomy mirrors the CLI exit codes:
 *   ParseError       -> 2   malformed document (bad JSON, bad "p/q", bad dims)
 *   ValidationError  -> 3   well-formed but violates a model invariant
 *                           (non-stochastic matrix, mu not a distribution, ...)
 *   HomogeneityError -> 4   embedding asked for a target that is not
 *                           homogeneous about the origin
 *   ReductionError   -> 1   internal precondition failed (e.g. decay search
 *                           cap exhausted); should not happen on valid input
 */

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct HomogeneityError : std::runtime_error {
  explicit HomogeneityError(const std::string& what) : std::runtime_error(what) {}
};

struct ReductionError : std::runtime_error {
  explicit ReductionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace distill
