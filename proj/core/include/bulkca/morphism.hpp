#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bulkca/automaton.hpp"

namespace bulkca {

enum class MapRole { Injection, Surjection, Bijection };

// State map between two automata; table[i] is the image of state i.
struct StateMap {
  int source_count = 0;
  int target_count = 0;
  std::vector<State> table;
  MapRole role = MapRole::Injection;

  State apply(State s) const { return table[s]; }
  // Throws DomainError when sizes or the role constraint fail.
  void validate() const;
  std::string format() const;
};

StateMap identity_map(int n, MapRole role = MapRole::Bijection);
// g after f; roles must compose.
StateMap compose_maps(const StateMap& f, const StateMap& g);

struct CheckOptions {
  std::uint64_t exhaustive_limit = kExhaustiveScanLimit;
  std::uint64_t samples = 1ull << 16;
  std::uint64_t seed = 0xb01dface;
};
struct CheckReport {
  bool exhaustive = true;
  std::uint64_t windows = 0;
  // First failing source window at common radius, empty when none seen.
  std::vector<State> counterexample;
};

// iota embeds a in b: iota injective and iota(f_a(w)) = f_b(iota(w))
// for every a-window at the common radius max(a.r, b.r).
bool check_subautomaton(const Automaton& a, const Automaton& b,
                        const StateMap& iota, const CheckOptions& opts = {},
                        CheckReport* report = nullptr);

// pi projects b onto a: pi surjective and pi(f_b(w)) = f_a(pi(w))
// for every b-window at the common radius.
bool check_quotient(const Automaton& a, const Automaton& b,
                    const StateMap& pi, const CheckOptions& opts = {},
                    CheckReport* report = nullptr);

struct FindLimits {
  // Rule evaluations before the search gives up non-exhaustively.
  std::uint64_t eval_budget = 1ull << 31;
};
struct FindResult {
  std::optional<StateMap> map;
  bool exhaustive = true;
  std::uint64_t evaluations = 0;
};

// Lexicographically least embedding of a into b, if any.
FindResult find_subautomaton(const Automaton& a, const Automaton& b,
                             const FindLimits& limits = {});
// Lexicographically least projection of b onto a, if any.
FindResult find_quotient(const Automaton& a, const Automaton& b,
                         const FindLimits& limits = {});
// Bijective embedding; equality of rules up to state renaming.
FindResult find_isomorphism(const Automaton& a, const Automaton& b,
                            const FindLimits& limits = {});

// Number of states above which stable-subset enumeration refuses.
inline constexpr int kStableSubsetMax = 20;

// Subsets Q with f_b(Q-window) in Q for every window, every size >= 1,
// ordered by size then by bitmask. Throws InfeasibleError past
// kStableSubsetMax states.
std::vector<std::vector<State>> stable_subsets(const Automaton& b);

// b restricted to a stable subset, states renumbered in subset order.
Automaton restrict_to(const Automaton& b, const std::vector<State>& subset);

struct MixedWitness {
  std::vector<State> subset;  // stable subset of b, ascending
  StateMap pi;                // restriction -> a quotient map
};
struct MixedResult {
  std::optional<MixedWitness> witness;
  bool exhaustive = true;
  std::uint64_t evaluations = 0;
};

// First stable subset (size, then bitmask order) whose restriction
// projects onto a; the map is the lexicographically least projection.
MixedResult find_mixed(const Automaton& a, const Automaton& b,
                       const FindLimits& limits = {});

// Partitions of b's states (as block ids per state, blocks numbered by
// first appearance) that are congruences: windows respect blocks.
// Exhaustive over partitions into exactly k blocks.
std::vector<std::vector<int>> congruences_into(const Automaton& b, int k);

}  // namespace bulkca
