#pragma once

#include <utility>

#include "bulkca/automaton.hpp"

namespace bulkca {

// Space-time rescaling <m, tau, T, s>: pack m cells into one (leftmost
// digit most significant), run T steps, shift the result by s, and
// mirror the lattice first when tau = -1.
struct Transform {
  int m = 1;
  int tau = 1;  // +1 or -1
  int T = 1;
  long long s = 0;

  bool operator==(const Transform&) const = default;
};

inline Transform identity_transform() { return {1, 1, 1, 0}; }

// Blocks of m cells coded base n, mirrored first when tau = -1.
// The period is replicated to a multiple of m; *replication records
// the factor when non-null.
PeriodicConfig pack(const PeriodicConfig& c, int m, int tau,
                    int* replication = nullptr);
// Inverse of pack on n_packed = n^m states.
PeriodicConfig unpack(const PeriodicConfig& c, int base_n, int m, int tau);

// Least r' with m * r' >= r * T + |s| + (m - 1).
int transformed_radius(int r, const Transform& t);

// The rescaled automaton on n^m states. Conjugacy:
//   step(apply_transform(a, t), pack(c, m, tau))
//     = pack(shift_config(iterate(a, c, T), s), m, tau).
Automaton apply_transform(const Automaton& a, const Transform& t);

// <k, 1, k, 0>: k cells, k steps, no shift.
Automaton grouping(const Automaton& a, int k);

// Composition law on transforms (mirror-free):
//   apply_transform(apply_transform(a, t1), t2)
//     = apply_transform(a, compose_transforms(t1, t2))  extensionally.
Transform compose_transforms(const Transform& t1, const Transform& t2);

struct NormalizedComposition {
  Transform beta;
  int t = 1;
};

// The beta with apply_transform(apply_transform(a, alpha), beta)
// extensionally equal to grouping(a, t), t = alpha.m * alpha.T.
// Mirror transforms leave a digit-reversal relabeling no plain grouping
// matches, so alpha.tau must be +1.
NormalizedComposition normalize_composition(const Transform& alpha);

}  // namespace bulkca
