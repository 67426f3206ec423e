/* Microbenchmarks for the hot paths of the reduction pipeline: exact
 * characteristic polynomials, matrix powering, the Muller block-power
 * construction, and the full three-stage reduction on lazy cycle walks. */

#include "distill/automata.hpp"
#include "distill/linalg.hpp"
#include "distill/matrix.hpp"
#include "distill/reduce.hpp"
#include "distill/semialg.hpp"

#include <benchmark/benchmark.h>

#include <cstddef>

namespace {

using namespace distill;

/* Lazy random walk on a k-cycle: 1/2 self-loop, 1/4 to each neighbour.
 * Doubly stochastic, irreducible, aperiodic: no zero eigenvalues, no
 * nontrivial roots of unity, dynamical dimension k - 1. */
RatMatrix lazy_cycle(std::size_t k) {
  RatMatrix m(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    m.at(j, j) = Rational(1, 2);
    m.at((j + 1) % k, j) += Rational(1, 4);
    m.at((j + k - 1) % k, j) += Rational(1, 4);
  }
  return m;
}

reduce::StochasticInstance cycle_instance(std::size_t k) {
  reduce::StochasticInstance inst;
  inst.M = lazy_cycle(k);
  inst.mu.assign(k, Rational(0));
  inst.mu[0] = 1;
  semialg::MultiPoly p = semialg::MultiPoly::variable(k, 0);
  p.add_term(semialg::MultiPoly::Exponents(k, 0), Rational(-1, 2 * static_cast<long>(k)));
  inst.targets.push_back({k, semialg::make_atom(p, semialg::Rel::gt), std::nullopt});
  inst.spec = automata::make_eventually(1, 0);
  return inst;
}

void bm_charpoly(benchmark::State& state) {
  const RatMatrix m = lazy_cycle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(charpoly(m));
}
BENCHMARK(bm_charpoly)->Arg(4)->Arg(6)->Arg(8);

void bm_mat_pow(benchmark::State& state) {
  const RatMatrix m = lazy_cycle(6);
  const auto n = static_cast<unsigned long long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mat_pow(m, n));
}
BENCHMARK(bm_mat_pow)->Arg(64)->Arg(1024);

void bm_power_construct(benchmark::State& state) {
  automata::MullerAutomaton a = automata::make_infinitely_often(1, 0);
  const auto c = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<automata::Letter>> letter_map;
  for (automata::Letter s = 0; s < (1u << c); ++s) {
    std::vector<automata::Letter> block;
    for (std::size_t r = 0; r < c; ++r) block.push_back((s >> r) & 1u);
    letter_map.push_back(std::move(block));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(automata::power_construct(a, c, c, letter_map));
}
BENCHMARK(bm_power_construct)->Arg(2)->Arg(4);

void bm_reduce_full(benchmark::State& state) {
  const reduce::StochasticInstance inst = cycle_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce::reduce_full(inst));
}
BENCHMARK(bm_reduce_full)->Arg(3)->Arg(4)->Arg(5);

} // namespace

BENCHMARK_MAIN();
