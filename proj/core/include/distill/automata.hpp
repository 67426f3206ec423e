#pragma once

#include <cstdint>
#include <vector>

namespace distill::automata {

/* Letters are bitmasks over target indices {0..h-1}; the alphabet of an
 * automaton with h targets is the full range [0, 2^h). */
using Letter = std::uint32_t;

/* Strictly increasing list of indices. */
using StateSet = std::vector<std::uint32_t>;

StateSet set_union(const StateSet& a, const StateSet& b);
bool set_contains(const StateSet& s, std::uint32_t x);

/* Deterministic Muller automaton. Acceptance is evaluated through per-state
 * labels: a run is accepting iff the union of labels over the states visited
 * infinitely often belongs to `acceptance`, a family of subsets of
 * [0, label_universe). A freshly built automaton labels each state with
 * itself (label_universe = num_states), so the family ranges over states in
 * the usual way; block-power products keep the original family and instead
 * label each product state with the set of base states its last block
 * traversed, which keeps the family size independent of the product. */
struct MullerAutomaton {
  std::uint32_t num_states = 0;
  std::uint32_t num_targets = 0;
  std::uint32_t initial = 0;
  std::vector<std::vector<std::uint32_t>> delta;  // [state][letter]
  std::vector<StateSet> acceptance;               // family over label universe
  std::vector<StateSet> labels;                   // per state
  std::uint32_t label_universe = 0;

  std::uint32_t num_letters() const { return 1u << num_targets; }
  std::uint32_t step(std::uint32_t state, Letter l) const { return delta[state][l]; }
};

/* Identity-labelled automaton from the plain parts. */
MullerAutomaton make_plain(std::uint32_t num_states, std::uint32_t num_targets,
                           std::uint32_t initial,
                           std::vector<std::vector<std::uint32_t>> delta,
                           std::vector<StateSet> acceptance);

/* Throws ValidationError when dimensions, ranges, or label sets are off. */
void validate(const MullerAutomaton& a);

/* Ultimately periodic word: prefix followed by cycle repeated forever. */
struct Lasso {
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;  // nonempty
};

struct RunResult {
  std::uint32_t final_state;
  std::vector<std::uint32_t> visited;  // length |word| + 1, starts at initial
};

RunResult run(const MullerAutomaton& a, const std::vector<Letter>& word);

/* Same automaton started from wherever `prefix` leads. Muller acceptance
 * ignores finite prefixes, so the family carries over unchanged. */
MullerAutomaton reroot(const MullerAutomaton& a, const std::vector<Letter>& prefix);

/* Block-power construction: the result reads one letter per length-c block
 * of the base automaton. `letter_map[s]` expands new letter s into the c
 * base letters of its block; states are the reachable (base state, set of
 * base states the last block entered) pairs, the initial pair carrying the
 * empty set. The base acceptance family survives verbatim because product
 * labels are unions of base labels over the tracked set. */
MullerAutomaton power_construct(const MullerAutomaton& a, std::size_t c,
                                std::uint32_t new_num_targets,
                                const std::vector<std::vector<Letter>>& letter_map);

/* Letter renaming by a bijection old-letter -> new-letter. */
MullerAutomaton rename(const MullerAutomaton& a, const std::vector<Letter>& bijection);

/* Runs the prefix, then iterates the cycle until the cycle-start state
 * repeats; the states entered inside the repeating portion are exactly those
 * visited infinitely often. */
bool lasso_accept(const MullerAutomaton& a, const Lasso& w);

/* Two-state schema builders over an h-target alphabet. */
MullerAutomaton make_eventually(std::uint32_t h, std::uint32_t i);
MullerAutomaton make_infinitely_often(std::uint32_t h, std::uint32_t i);

} // namespace distill::automata
