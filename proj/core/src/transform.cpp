#include "bulkca/transform.hpp"

#include <climits>
#include <numeric>
#include <string>
#include <vector>

#include "bulkca/zoo.hpp"

namespace bulkca {

namespace {

void validate(const Transform& t) {
  if (t.m < 1 || t.T < 1 || (t.tau != 1 && t.tau != -1))
    throw DomainError("transform out of range: need m >= 1, T >= 1, tau = +-1");
}

int packed_states(int n, int m) {
  const std::uint64_t nn = checked_pow(static_cast<std::uint64_t>(n),
                                       static_cast<unsigned>(m));
  if (nn > static_cast<std::uint64_t>(INT_MAX))
    throw DomainError("packed alphabet exceeds the state-count range");
  return static_cast<int>(nn);
}

std::string transform_suffix(const Transform& t) {
  std::string out = "<";
  out += std::to_string(t.m);
  out += t.tau == -1 ? ",-" : ",+";
  out += ",";
  out += std::to_string(t.T);
  out += ",";
  out += std::to_string(t.s);
  out += ">";
  return out;
}

}  // namespace

PeriodicConfig pack(const PeriodicConfig& c, int m, int tau,
                    int* replication) {
  if (m < 1 || (tau != 1 && tau != -1))
    throw DomainError("pack needs m >= 1 and tau = +-1");
  const int L = c.size();
  const int k = static_cast<int>(std::lcm(static_cast<long long>(L),
                                          static_cast<long long>(m)) / L);
  if (replication) *replication = k;
  PeriodicConfig base = k == 1 ? c : replicate(c, k);
  if (tau == -1) base = mirror_config(base);
  const int np = packed_states(c.n, m);
  PeriodicConfig out;
  out.n = np;
  const int blocks = base.size() / m;
  out.word.resize(blocks);
  for (int z = 0; z < blocks; ++z) {
    std::uint64_t code = 0;
    for (int j = 0; j < m; ++j)
      code = code * c.n + base.word[static_cast<std::size_t>(z) * m + j];
    out.word[z] = static_cast<State>(code);
  }
  return out;
}

PeriodicConfig unpack(const PeriodicConfig& c, int base_n, int m, int tau) {
  if (m < 1 || (tau != 1 && tau != -1))
    throw DomainError("unpack needs m >= 1 and tau = +-1");
  if (c.n != packed_states(base_n, m))
    throw DomainError("packed alphabet does not match base_n^m");
  PeriodicConfig out;
  out.n = base_n;
  out.word.resize(c.word.size() * static_cast<std::size_t>(m));
  for (int z = 0; z < c.size(); ++z) {
    std::uint64_t code = c.word[z];
    for (int j = m - 1; j >= 0; --j) {
      out.word[static_cast<std::size_t>(z) * m + j] =
          static_cast<State>(code % base_n);
      code /= base_n;
    }
  }
  if (tau == -1) out = mirror_config(out);
  return out;
}

int transformed_radius(int r, const Transform& t) {
  const long long num = static_cast<long long>(r) * t.T +
                        (t.s < 0 ? -t.s : t.s) + (t.m - 1);
  return static_cast<int>((num + t.m - 1) / t.m);
}

Automaton apply_transform(const Automaton& a, const Transform& t) {
  validate(t);
  if (t == identity_transform()) return a;
  if (t.m == 1 && a.shift_meta) {
    // Unpacked transforms move each track affinely; mirroring flips it.
    ShiftProduct sp;
    sp.factors.reserve(a.shift_meta->factors.size());
    for (const auto& f : a.shift_meta->factors)
      sp.factors.push_back({f.states, t.tau * (t.T * f.vector + t.s)});
    Automaton out = shift_product(sp);
    out.label = (a.label.empty() ? "?" : a.label) + transform_suffix(t);
    return out;
  }
  const int m = t.m;
  const int T = t.T;
  const int tau = t.tau;
  const long long s = t.s;
  const int np = packed_states(a.n, m);
  const int rp = transformed_radius(a.r, t);

  auto base = std::make_shared<const Automaton>(a);
  Automaton out;
  out.n = np;
  out.r = rp;
  out.label = (a.label.empty() ? "?" : a.label) + transform_suffix(t);

  const int n = a.n;
  const int r = a.r;
  out.lazy = [base, n, r, m, T, tau, s, rp, np](const State* w) {
    const int digits_len = m * (2 * rp + 1);
    State dstack[256];
    std::vector<State> dheap;
    State* D = dstack;
    if (digits_len > 256) {
      dheap.resize(digits_len);
      D = dheap.data();
    }
    for (int b = 0; b < 2 * rp + 1; ++b) {
      std::uint64_t code = w[b];
      for (int j = m - 1; j >= 0; --j) {
        D[b * m + j] = static_cast<State>(code % n);
        code /= n;
      }
    }
    // x(p): base-lattice content, mirrored when tau = -1.
    const int origin = m * rp;
    auto x_at = [&](long long p) {
      return D[tau == 1 ? p + origin : origin - p];
    };
    // Output digit i reads (G^T x)(q_i).
    const long long q0 = tau == 1 ? -s : -(m - 1) - s;
    const long long q1 = tau == 1 ? (m - 1) - s : -s;
    const long long lo = q0 - static_cast<long long>(r) * T;
    const int width0 = static_cast<int>(q1 - q0 + 1) + 2 * r * T;
    State lstack[256];
    std::vector<State> lheap;
    State* cur = lstack;
    if (width0 > 256) {
      lheap.resize(width0);
      cur = lheap.data();
    }
    for (int i = 0; i < width0; ++i)
      cur[i] = x_at(lo + i);
    int width = width0;
    for (int k = 0; k < T; ++k) {
      width -= 2 * r;
      for (int i = 0; i < width; ++i) cur[i] = base->eval(&cur[i]);
    }
    // cur[0] now sits at position q0.
    std::uint64_t code = 0;
    for (int i = 0; i < m; ++i) {
      const long long q = tau == 1 ? i - s : -i - s;
      code = code * n + cur[q - q0];
    }
    return static_cast<State>(code);
  };
  return finalize(std::move(out));
}

Automaton grouping(const Automaton& a, int k) {
  if (k < 1) throw DomainError("grouping factor must be positive");
  if (k == 1) return a;
  Transform t{k, 1, k, 0};
  Automaton out = apply_transform(a, t);
  out.label = (a.label.empty() ? "?" : a.label) + "[" + std::to_string(k) + "]";
  return out;
}

Transform compose_transforms(const Transform& t1, const Transform& t2) {
  validate(t1);
  validate(t2);
  if (t2.tau == -1)
    throw DomainError(
        "an outer mirror composes only up to a block-digit relabeling");
  Transform out;
  out.m = t1.m * t2.m;
  out.tau = t1.tau;
  out.T = t1.T * t2.T;
  out.s = static_cast<long long>(t2.T) * t1.s +
          static_cast<long long>(t1.tau) * t1.m * t2.s;
  return out;
}

NormalizedComposition normalize_composition(const Transform& alpha) {
  validate(alpha);
  if (alpha.tau == -1)
    throw DomainError(
        "mirror transforms leave a digit relabeling; no grouping matches");
  NormalizedComposition out;
  out.beta = Transform{alpha.T, 1, alpha.m, -alpha.s};
  out.t = alpha.m * alpha.T;
  return out;
}

}  // namespace bulkca
