#include "distill/automata.hpp"

#include "distill/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

namespace distill::automata {

StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const StateSet& s, std::uint32_t x) {
  return std::binary_search(s.begin(), s.end(), x);
}

MullerAutomaton make_plain(std::uint32_t num_states, std::uint32_t num_targets,
                           std::uint32_t initial,
                           std::vector<std::vector<std::uint32_t>> delta,
                           std::vector<StateSet> acceptance) {
  MullerAutomaton a;
  a.num_states = num_states;
  a.num_targets = num_targets;
  a.initial = initial;
  a.delta = std::move(delta);
  a.acceptance = std::move(acceptance);
  a.label_universe = num_states;
  a.labels.reserve(num_states);
  for (std::uint32_t q = 0; q < num_states; ++q) a.labels.push_back({q});
  validate(a);
  return a;
}

namespace {

void check_state_set(const StateSet& s, std::uint32_t universe, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= universe)
      throw ValidationError(std::string(what) + ": index " + std::to_string(s[i]) +
                            " out of range " + std::to_string(universe));
    if (i > 0 && s[i] <= s[i - 1])
      throw ValidationError(std::string(what) + ": indices must be strictly increasing");
  }
}

} // namespace

void validate(const MullerAutomaton& a) {
  if (a.num_states == 0) throw ValidationError("automaton: needs at least one state");
  if (a.num_targets >= 31) throw ValidationError("automaton: too many targets for a bitmask alphabet");
  if (a.initial >= a.num_states) throw ValidationError("automaton: initial state out of range");
  if (a.delta.size() != a.num_states)
    throw ValidationError("automaton: delta must have one row per state");
  const std::uint32_t letters = a.num_letters();
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    if (a.delta[q].size() != letters)
      throw ValidationError("automaton: delta row " + std::to_string(q) +
                            " must cover all " + std::to_string(letters) + " letters");
    for (std::uint32_t l = 0; l < letters; ++l)
      if (a.delta[q][l] >= a.num_states)
        throw ValidationError("automaton: delta(" + std::to_string(q) + "," +
                              std::to_string(l) + ") out of range");
  }
  if (a.labels.size() != a.num_states)
    throw ValidationError("automaton: one label set per state required");
  for (const StateSet& s : a.labels) check_state_set(s, a.label_universe, "automaton label");
  for (const StateSet& s : a.acceptance)
    check_state_set(s, a.label_universe, "automaton acceptance set");
}

RunResult run(const MullerAutomaton& a, const std::vector<Letter>& word) {
  RunResult r;
  r.visited.reserve(word.size() + 1);
  std::uint32_t q = a.initial;
  r.visited.push_back(q);
  for (Letter l : word) {
    assert(l < a.num_letters());
    q = a.delta[q][l];
    r.visited.push_back(q);
  }
  r.final_state = q;
  return r;
}

MullerAutomaton reroot(const MullerAutomaton& a, const std::vector<Letter>& prefix) {
  MullerAutomaton out = a;
  out.initial = run(a, prefix).final_state;
  return out;
}

MullerAutomaton power_construct(const MullerAutomaton& a, std::size_t c,
                                std::uint32_t new_num_targets,
                                const std::vector<std::vector<Letter>>& letter_map) {
  if (c < 1) throw ValidationError("power construction: block length must be positive");
  const std::uint32_t new_letters = 1u << new_num_targets;
  if (letter_map.size() != new_letters)
    throw ValidationError("power construction: letter map must cover the new alphabet");

  using ProductState = std::pair<std::uint32_t, StateSet>;
  std::map<ProductState, std::uint32_t> index;
  std::vector<ProductState> order;

  const auto intern = [&](ProductState p) -> std::uint32_t {
    auto [it, inserted] = index.emplace(std::move(p), static_cast<std::uint32_t>(order.size()));
    if (inserted) order.push_back(it->first);
    return it->second;
  };

  MullerAutomaton out;
  out.num_targets = new_num_targets;
  out.initial = intern({a.initial, {}});
  out.acceptance = a.acceptance;
  out.label_universe = a.label_universe;

  for (std::uint32_t at = 0; at < order.size(); ++at) {
    const ProductState cur = order[at];  // copy: order may reallocate below
    out.delta.emplace_back();
    out.delta.back().reserve(new_letters);
    StateSet label;
    for (std::uint32_t p : cur.second) label = set_union(label, a.labels[p]);
    out.labels.push_back(std::move(label));
    for (std::uint32_t s = 0; s < new_letters; ++s) {
      const std::vector<Letter>& block = letter_map[s];
      if (block.size() != c)
        throw ValidationError("power construction: every block must have length c");
      std::uint32_t q = cur.first;
      StateSet entered;
      for (Letter l : block) {
        if (l >= a.num_letters())
          throw ValidationError("power construction: block letter out of range");
        q = a.delta[q][l];
        if (!set_contains(entered, q))
          entered.insert(std::lower_bound(entered.begin(), entered.end(), q), q);
      }
      out.delta.back().push_back(intern({q, std::move(entered)}));
    }
  }
  out.num_states = static_cast<std::uint32_t>(order.size());
  return out;
}

MullerAutomaton rename(const MullerAutomaton& a, const std::vector<Letter>& bijection) {
  const std::uint32_t letters = a.num_letters();
  if (bijection.size() != letters)
    throw ValidationError("rename: bijection must cover the whole alphabet");
  std::vector<Letter> inverse(letters, letters);
  for (std::uint32_t old = 0; old < letters; ++old) {
    if (bijection[old] >= letters || inverse[bijection[old]] != letters)
      throw ValidationError("rename: letter map is not a bijection");
    inverse[bijection[old]] = old;
  }
  MullerAutomaton out = a;
  for (std::uint32_t q = 0; q < a.num_states; ++q)
    for (std::uint32_t s = 0; s < letters; ++s) out.delta[q][s] = a.delta[q][inverse[s]];
  return out;
}

bool lasso_accept(const MullerAutomaton& a, const Lasso& w) {
  if (w.cycle.empty()) throw ValidationError("lasso acceptance: cycle must be nonempty");
  std::uint32_t q = run(a, w.prefix).final_state;

  /* Iterate the cycle; boundary states must repeat within num_states + 1
   * iterations, and the blocks between the two occurrences are what the run
   * settles into. */
  std::vector<std::int64_t> seen_at(a.num_states, -1);
  std::vector<StateSet> entered_per_block;
  seen_at[q] = 0;
  for (std::size_t it = 1;; ++it) {
    StateSet entered;
    for (Letter l : w.cycle) {
      assert(l < a.num_letters());
      q = a.delta[q][l];
      if (!set_contains(entered, q))
        entered.insert(std::lower_bound(entered.begin(), entered.end(), q), q);
    }
    entered_per_block.push_back(std::move(entered));
    if (seen_at[q] >= 0) {
      StateSet inf;
      for (std::size_t k = static_cast<std::size_t>(seen_at[q]); k < it; ++k)
        inf = set_union(inf, entered_per_block[k]);
      StateSet label;
      for (std::uint32_t p : inf) label = set_union(label, a.labels[p]);
      return std::find(a.acceptance.begin(), a.acceptance.end(), label) != a.acceptance.end();
    }
    seen_at[q] = static_cast<std::int64_t>(it);
  }
}

MullerAutomaton make_eventually(std::uint32_t h, std::uint32_t i) {
  assert(i < h);
  const std::uint32_t letters = 1u << h;
  std::vector<std::vector<std::uint32_t>> delta(2, std::vector<std::uint32_t>(letters));
  for (std::uint32_t s = 0; s < letters; ++s) {
    delta[0][s] = (s >> i) & 1u;
    delta[1][s] = 1;
  }
  return make_plain(2, h, 0, std::move(delta), {{1}});
}

MullerAutomaton make_infinitely_often(std::uint32_t h, std::uint32_t i) {
  assert(i < h);
  const std::uint32_t letters = 1u << h;
  std::vector<std::vector<std::uint32_t>> delta(2, std::vector<std::uint32_t>(letters));
  for (std::uint32_t s = 0; s < letters; ++s) {
    delta[0][s] = (s >> i) & 1u;
    delta[1][s] = (s >> i) & 1u;
  }
  return make_plain(2, h, 0, std::move(delta), {{1}, {0, 1}});
}

} // namespace distill::automata
