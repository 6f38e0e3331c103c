#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bulkca/automaton.hpp"

namespace bulkca {

// f(x, y, z) = x + y + z mod p, radius 1.
Automaton additive(int p);

// Content moves right by z: G(c)(i) = c(i - z); radius |z|.
Automaton shift(int n, long long z);

// shift(n, 0).
Automaton identity_automaton(int n);

// Product of shifts, one track per factor; lazy gather evaluation.
Automaton shift_product(const ShiftProduct& sp);

struct Rational {
  long long num = 0;
  long long den = 1;  // > 0, reduced
  bool operator==(const Rational&) const = default;
};

// ((z3 - z1) / (z2 - z1), (z4 - z1) / (z2 - z1), ...) over the sorted
// vectors; invariant under z -> t z + c. Undefined below 3 vectors.
std::vector<Rational> characteristic_sequence(const ShiftProduct& sp);

// Number of distinct shift vectors.
int shift_product_level(const ShiftProduct& sp);

// f(w) = max of the window, radius 1.
Automaton delta_max(int n);

// The counterexample to quasi-order transitivity: a p-state automaton
// whose two-state behavior is reachable as a quotient of a sub-automaton
// but not as a sub-automaton of a quotient, paired with the two-state
// identity that cannot embed. States: 0 cycles, {1, 2} and {3, 4} flip
// on a non-zero left neighbor.
std::pair<Automaton, Automaton> nontransitivity_gadget(int p);

// (big, small): big has 3 states and radius 2, small 2 states and
// radius 2; merging big's states 1 and 2 projects big onto small while
// no embedding of small into big exists at these sizes.
std::pair<Automaton, Automaton> parity_range_pair();

// One tape cell per lattice cell: tape symbol with an arrow pointing
// toward the head, or tape symbol with the head's control state, plus
// a spreading junk state for inconsistent arrangements. Radius 1; one
// machine step per automaton step on consistent configurations.
Automaton tm_embed(const TuringMachine& tm);

// Cell states of tm_embed, exposed for encoding and decoding.
struct TmCellCoding {
  int symbols = 0;
  int states = 0;
  State arrow(int symbol, int dir) const {  // dir: -1 left, +1 right
    return static_cast<State>(2 * symbol + (dir > 0 ? 1 : 0));
  }
  State head(int symbol, int q) const {
    return static_cast<State>(2 * symbols + symbol * states + q);
  }
  State kappa() const {
    return static_cast<State>(2 * symbols + symbols * states);
  }
  int total() const { return 2 * symbols + symbols * states + 1; }
};
TmCellCoding tm_cell_coding(const TuringMachine& tm);

// Periodic configuration of tm_embed: tape[i] under the head at
// head_pos, arrows pointing at the head elsewhere. One junction cell
// where the two arrow runs meet is unavoidable on a cycle.
PeriodicConfig tm_encode(const TuringMachine& tm,
                         const std::vector<int>& tape, int head_pos,
                         int q);

struct TmView {
  std::vector<int> tape;
  int head_pos = 0;
  int q = 0;
};
// Reads back tape cells lo..hi (inclusive) and the head inside them;
// nullopt when the segment holds junk or not exactly one head.
std::optional<TmView> tm_decode(const TuringMachine& tm,
                                const PeriodicConfig& c, int lo, int hi);

// Runs the machine on an infinite blank-padded tape; returns the
// configuration after t steps.
struct TmTrace {
  std::vector<int> tape;  // cells offset_lo..offset_hi
  long long offset_lo = 0;
  int head_pos = 0;
  int q = 0;
};
TmTrace tm_run(const TuringMachine& tm, const std::vector<int>& tape,
               int head_pos, int q, int steps);

// Canned three-symbol (blank, mark, separator), two-state machine:
// walks right over marks, appends one mark to the run, then drifts
// left forever. Exercises both arrow directions under tm_embed.
TuringMachine unary_increment_machine();

// Block encoding over {0, 1}: state a becomes 0110 psi(a) with psi the
// lexicographic enumeration of 11-free words of length m - 1 prefixed
// by 0, m least with enough words. Radius (r + 1)(m + 4).
Automaton encode_two_state(const Automaton& a);
// psi word width m and the words themselves, exposed for tests.
int two_state_block_width(int n);
std::vector<std::vector<State>> two_state_psi(int n);

// Block encoding over n + 1 states: state a becomes # 0 1 ... n-1 # a
// with # = n. Every window of the image contains every base state, so
// the image rule is captive. Radius (r + 1)(n + 3).
Automaton encode_captive(const Automaton& a);
int captive_block_len(int n);

// a with one fresh spreading state kappa = n; the base is padded to
// radius >= 1 so kappa genuinely spreads.
Automaton encode_equipt(const Automaton& a);

// a x shift(2, 1) x shift(2, -1); 4n states.
Automaton encode_sensi(const Automaton& a);

}  // namespace bulkca
