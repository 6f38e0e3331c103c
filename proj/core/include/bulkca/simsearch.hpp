#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bulkca/morphism.hpp"
#include "bulkca/property.hpp"
#include "bulkca/transform.hpp"

namespace bulkca {

enum class Relation { Injective, Surjective, Mixed };

const char* to_string(Relation r);

// Per-cell window scans above this count are skipped as Unknown cells.
inline constexpr std::uint64_t kScanCutoff = 1ull << 28;

struct SearchBounds {
  int max_m = 2;
  int max_T = 2;
  int max_shift = 2;
  int max_group = 2;
  bool allow_mirror = false;
};

// One-sided normal form: rescale a by alpha, group b by t, relate the
// results directly.
struct SimulationWitness {
  Relation rel = Relation::Injective;
  Transform alpha;
  int group_t = 1;
  StateMap map;
  // Mixed only: the stable subset of the grouped b the map projects from.
  std::vector<State> subset;

  std::string format() const;
};

struct SearchStats {
  std::uint64_t cells_total = 0;
  std::uint64_t cells_searched = 0;
  std::uint64_t cells_pruned_state_count = 0;
  std::uint64_t cells_pruned_divisibility = 0;
  std::uint64_t cells_pruned_quiescence = 0;
  std::uint64_t cells_skipped_cutoff = 0;
  std::uint64_t cells_skipped_guard = 0;
  std::uint64_t subsets_pruned_divisibility = 0;
  std::uint64_t budget_aborts = 0;
  std::uint64_t evaluations = 0;
};

struct SearchOutcome {
  Status status = Status::Unknown;  // Holds or Unknown, never Fails
  std::optional<SimulationWitness> witness;
  SearchStats stats;
  std::vector<std::string> notes;
};

// Scans cells (t, m, T, s, tau) in canonical order: t, then m, then T,
// then |s| with the negative sign first, then tau (+1 first; -1 only
// with allow_mirror). The first witness in this order is returned, with
// the lexicographically least map inside the cell. Worker count never
// changes the result.
SearchOutcome search(Relation rel, const Automaton& a, const Automaton& b,
                     const SearchBounds& bounds, int jobs = 1);

// As search, with the rescaling of a pinned to the trivial transform;
// only the grouping of b varies.
SearchOutcome search_strong(Relation rel, const Automaton& a,
                            const Automaton& b, const SearchBounds& bounds,
                            int jobs = 1);

// Replays the witness through the direct checkers.
bool verify_witness(const SimulationWitness& w, const Automaton& a,
                    const Automaton& b);

}  // namespace bulkca
