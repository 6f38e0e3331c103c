#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bulkca/automaton.hpp"

namespace bulkca {

enum class Status { Holds, Fails, Unknown };

const char* to_string(Status s);

// Analyzer outcome with a replayable witness where one exists.
struct Verdict {
  Status status = Status::Unknown;
  std::string note;

  // Surjectivity: a word with no preimage (shortest, lexicographically
  // least among shortest).
  std::optional<std::vector<State>> orphan;
  // Injectivity: two distinct periodic configurations with equal images.
  std::optional<std::pair<PeriodicConfig, PeriodicConfig>> collision;
  // Nilpotency: two disjoint cycles, each a closed orbit.
  std::optional<std::pair<std::vector<PeriodicConfig>,
                          std::vector<PeriodicConfig>>> cycle_pair;
};

// Live-subset budget for the surjectivity construction.
inline constexpr std::uint64_t kSubsetBudget = 1ull << 20;
// Pair-vertex budget for the injectivity construction.
inline constexpr std::uint64_t kPairBudget = 1ull << 24;
// Window budget for inverse-rule forcing.
inline constexpr std::uint64_t kInverseScanLimit = 1ull << 26;

// Every output occurs equally often in the rule table.
bool is_balanced(const Automaton& a);

// Global map onto all configurations. Fails carries the orphan word.
// Products recurse through their components exactly.
Verdict is_surjective(const Automaton& a);

// Global map one-to-one on periodic configurations. Fails carries two
// distinct periodic preimages of one configuration.
Verdict is_injective(const Automaton& a);

// Inverse automaton with radius <= r_max when the rule is injective;
// nullopt when no inverse exists within the bound or injectivity is
// not settled.
std::optional<Automaton> inverse(const Automaton& a, int r_max);

// Both border maps bijective: fixing all but the leftmost (rightmost)
// window cell makes the rule a permutation of that cell.
bool is_lr_permutative(const Automaton& a);
// Same question, nullopt when the scan exceeds the exhaustive limit.
std::optional<bool> try_lr_permutative(const Automaton& a);

// States q with f(q, ..., q) = q.
std::vector<State> quiescent_states(const Automaton& a);

// States that propagate from any cell of the minimal neighborhood:
// kappa is spreading iff the minimal neighborhood is not a subset of
// {0} and every window holding kappa at one of its offsets maps to
// kappa.
std::vector<State> spreading_states(const Automaton& a);

struct CaptiveReport {
  bool exhaustive = true;
  std::uint64_t windows = 0;
};
// Every output already occurs in its window. Lazy rules beyond the
// exhaustive limit are sampled deterministically and flagged.
bool is_captive(const Automaton& a, CaptiveReport* report = nullptr);

// Searches periods P <= max_period, transients up to max_transient,
// for two disjoint cycles (Fails, certified). If every probed orbit
// falls into one shared fixed point the note records the bounded
// evidence; the answer stays Unknown either way.
Verdict nilpotent_over_periodic(const Automaton& a, int max_period,
                                int max_transient);

}  // namespace bulkca
