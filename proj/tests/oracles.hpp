#pragma once

// Brute-force references. Everything here answers by direct enumeration
// of words or periodic configurations, independent of the analyzers
// under test.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <bulkca/automaton.hpp>
#include <bulkca/morphism.hpp>

namespace oracle {

using bulkca::Automaton;
using bulkca::PeriodicConfig;
using bulkca::State;
using bulkca::StateMap;

// Some word of length |w| + 2r maps onto w.
bool reachable(const Automaton& a, const std::vector<State>& w);

// Shortest word with no preimage word of length len + 2r, scanning
// lengths 1..max_len in lexicographic order within a length; nullopt
// when every word that short is reachable.
std::optional<std::vector<State>> find_orphan(const Automaton& a,
                                              int max_len);

// Two configurations of period <= max_period, distinct as lattice
// functions, with equal one-step images.
std::optional<std::pair<PeriodicConfig, PeriodicConfig>> find_collision(
    const Automaton& a, int max_period);

// iota applied cellwise commutes with the global maps on every periodic
// configuration of period <= max_period.
bool global_embedding(const Automaton& a, const Automaton& b,
                      const StateMap& iota, int max_period);

// pi applied cellwise commutes with the global maps on every periodic
// configuration of period <= max_period.
bool global_projection(const Automaton& a, const Automaton& b,
                       const StateMap& pi, int max_period);

// Uniform random rule table, fixed by seed.
Automaton random_automaton(int n, int r, std::uint64_t seed);

// f(w) = perm1(w[0]) + g(middle) + perm2(w[2r]) mod n: a permutation of
// either border cell whatever the rest of the window holds.
Automaton random_lr_permutative(int n, int r, std::uint64_t seed);

// All configurations with period 1..max_period, every word enumerated.
std::vector<PeriodicConfig> all_configs(int n, int max_period);

}  // namespace oracle
