#pragma once

#include <iosfwd>
#include <string>

#include "bulkca/automaton.hpp"
#include "bulkca/morphism.hpp"
#include "bulkca/transform.hpp"

namespace bulkca {

// Text format, one automaton per stream:
//   ca v1
//   states <n>
//   radius <r>
//   rule table <n^(2r+1) entries in window-index order>
//       | additive <p>
//       | shiftprod <k> then k lines "<n_i> <z_i>"
//       | encode <two-state|captive|equipt|sensi> then "base" and a
//         nested body (states/radius/rule)
// Blank lines and lines starting with # are ignored between fields.
Automaton parse_ca(std::istream& in);
Automaton parse_ca_file(const std::string& path);
Automaton parse_ca_string(const std::string& text);

// Deterministic serialization; parse(write(a)) is table-equal to a.
// Structured rules are written when their metadata is present and the
// radius matches; otherwise the table is written, and an automaton too
// large to materialize without structural metadata is an error.
void write_ca(const Automaton& a, std::ostream& out);
void write_ca_file(const Automaton& a, const std::string& path);
std::string write_ca_string(const Automaton& a);

// "<L> : s0 s1 ... s(L-1)", states below n.
PeriodicConfig parse_config(const std::string& text, int n);
std::string format_config(const PeriodicConfig& c);

// "m:T:s" with a leading ~ for the mirrored variant.
Transform parse_transform(const std::string& text);
std::string format_transform(const Transform& t);

// "t0 t1 ... t(k-1)" listing images of source states 0..k-1.
StateMap parse_map(const std::string& text, int source_count,
                   int target_count, MapRole role);

}  // namespace bulkca
