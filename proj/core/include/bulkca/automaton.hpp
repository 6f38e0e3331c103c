#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bulkca {

using State = std::uint32_t;

// Rule tables are materialized up to this many entries, lazy beyond.
inline constexpr std::uint64_t kMaterializeLimit = 1ull << 24;

// Exhaustive window scans are attempted up to this many windows.
inline constexpr std::uint64_t kExhaustiveScanLimit = 1ull << 26;

struct BulkcaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Arguments outside an operation's domain (state counts, bad maps, ...).
struct DomainError : BulkcaError {
  using BulkcaError::BulkcaError;
};
// Inputs whose exact treatment exceeds the pinned size limits.
struct InfeasibleError : BulkcaError {
  using BulkcaError::BulkcaError;
};
// Malformed textual inputs.
struct ParseError : BulkcaError {
  using BulkcaError::BulkcaError;
};

// n^k saturating at 2^62 so comparisons against limits never overflow.
std::uint64_t checked_pow(std::uint64_t n, unsigned k);

struct ProductParts;
struct ShiftProduct;
struct EncodeMeta;

// One-dimensional cellular automaton. States are 0..n-1; the local rule
// maps windows of 2r+1 states (leftmost first) to one state. The window
// with digits w[0..2r] has table index sum w[i] * n^(2r-i).
struct Automaton {
  int n = 1;
  int r = 0;
  std::string label;

  // Exactly one evaluation path: table when non-empty, lazy otherwise.
  std::vector<State> table;
  std::function<State(const State*)> lazy;

  // Structural metadata, kept for exact analyzer recursion and
  // serialization. Absent on automata built any other way.
  std::shared_ptr<const ProductParts> product_meta;
  std::shared_ptr<const ShiftProduct> shift_meta;
  std::optional<int> additive_meta;
  std::shared_ptr<const EncodeMeta> encode_meta;

  int window_len() const { return 2 * r + 1; }
  std::uint64_t table_size() const {
    return checked_pow(static_cast<std::uint64_t>(n), 2 * r + 1);
  }
  bool materialized() const { return !table.empty(); }

  // w points at 2r+1 states.
  State eval(const State* w) const;
  // w points at 2R+1 states, R >= r; evaluates on the central slice.
  State eval_at(const State* w, int R) const {
    return eval(w + (R - r));
  }
};

struct ProductParts {
  Automaton left;
  Automaton right;
};

// Product of shifts: each factor moves its own track by a fixed offset.
struct ShiftProduct {
  struct Factor {
    int states = 2;
    long long vector = 0;
  };
  std::vector<Factor> factors;
};

enum class EncodeKind { TwoState, Captive, Equipt, Sensi };
struct EncodeMeta {
  EncodeKind kind;
  Automaton base;
};

// Fills the table when it fits under kMaterializeLimit; returns a.
Automaton finalize(Automaton a);

// Builds a table automaton; table.size() must be n^(2r+1).
Automaton make_table_automaton(int n, int r, std::vector<State> table,
                               std::string label = {});

// Spatially periodic configuration: cell z holds word[z mod size].
struct PeriodicConfig {
  int n = 1;
  std::vector<State> word;

  int size() const { return static_cast<int>(word.size()); }
  State at(long long z) const {
    long long L = size();
    return word[static_cast<std::size_t>(((z % L) + L) % L)];
  }

  // Shortest word generating the same configuration.
  PeriodicConfig normalized() const;
  // Configurations are equal as functions on the lattice.
  bool operator==(const PeriodicConfig& o) const;
};

// word repeated k times.
PeriodicConfig replicate(const PeriodicConfig& c, int k);
// Content moved right by s cells: result(z) = c(z - s).
PeriodicConfig shift_config(const PeriodicConfig& c, long long s);
// result(z) = c(z + k).
PeriodicConfig rotate(const PeriodicConfig& c, long long k);
// result(z) = c(-z).
PeriodicConfig mirror_config(const PeriodicConfig& c);

// One synchronous update of every cell.
PeriodicConfig step(const Automaton& a, const PeriodicConfig& c);
PeriodicConfig iterate(const Automaton& a, PeriodicConfig c, int t);

// t-fold composition of the rule; radius r*t (identity automaton at t=0).
Automaton power(const Automaton& a, int t);

// Component-wise product on state pairs (i, j) coded as i * b.n + j.
Automaton product(const Automaton& a, const Automaton& b);

// Same behavior with the radius padded to R >= r.
Automaton canonicalize_radius(const Automaton& a, int R);

// Least (p, q), q >= 1, with iterate(a, c, p + q) = iterate(a, c, p),
// searching transients up to t_max steps; nullopt if none found.
std::optional<std::pair<int, int>> orbit_cycle(const Automaton& a,
                                               const PeriodicConfig& c,
                                               int t_max);

struct NeighborhoodOptions {
  bool allow_sampling = false;
  std::uint64_t samples = 1ull << 20;
  std::uint64_t seed = 0x5eedcab1eull;
};
struct NeighborhoodReport {
  bool exhaustive = true;
  std::uint64_t evaluations = 0;
};

// Offsets the rule actually reads: o is in the result iff two windows
// differing only at o map to different states. Sorted ascending.
std::vector<int> minimal_neighborhood(const Automaton& a,
                                      const NeighborhoodOptions& opts = {},
                                      NeighborhoodReport* report = nullptr);

// Deterministic Turing machine with total transition function.
struct TuringMachine {
  int symbols = 0;
  int states = 0;
  struct Step {
    int state = 0;
    int write = 0;
    int move = 0;  // -1, 0, +1
  };
  // delta[state * symbols + symbol]
  std::vector<Step> delta;

  const Step& at(int q, int g) const {
    return delta[static_cast<std::size_t>(q) * symbols + g];
  }
};

// Advances the window digit vector in lexicographic order; false on wrap.
bool next_window(std::vector<State>& w, int n);

}  // namespace bulkca
