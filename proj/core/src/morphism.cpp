#include "bulkca/morphism.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>

namespace bulkca {

void StateMap::validate() const {
  if (source_count < 1 || target_count < 1)
    throw DomainError("state map with empty side");
  if (static_cast<int>(table.size()) != source_count)
    throw DomainError("state map table length differs from source count");
  for (State t : table)
    if (static_cast<int>(t) >= target_count)
      throw DomainError("state map image out of range");
  const bool want_inj =
      role == MapRole::Injection || role == MapRole::Bijection;
  const bool want_surj =
      role == MapRole::Surjection || role == MapRole::Bijection;
  if (role == MapRole::Bijection && source_count != target_count)
    throw DomainError("bijection needs equal state counts");
  if (want_inj) {
    std::vector<char> seen(target_count, 0);
    for (State t : table) {
      if (seen[t]) throw DomainError("map is not injective");
      seen[t] = 1;
    }
  }
  if (want_surj) {
    std::vector<char> seen(target_count, 0);
    for (State t : table) seen[t] = 1;
    for (int i = 0; i < target_count; ++i)
      if (!seen[i]) throw DomainError("map is not surjective");
  }
}

std::string StateMap::format() const {
  std::string out = "map " + std::to_string(source_count) + ":";
  for (State t : table) out += " " + std::to_string(t);
  return out;
}

StateMap identity_map(int n, MapRole role) {
  StateMap m;
  m.source_count = n;
  m.target_count = n;
  m.role = role;
  m.table.resize(n);
  for (int i = 0; i < n; ++i) m.table[i] = static_cast<State>(i);
  return m;
}

StateMap compose_maps(const StateMap& f, const StateMap& g) {
  if (f.target_count != g.source_count)
    throw DomainError("maps do not compose");
  StateMap out;
  out.source_count = f.source_count;
  out.target_count = g.target_count;
  out.table.resize(f.source_count);
  for (int i = 0; i < f.source_count; ++i)
    out.table[i] = g.table[f.table[i]];
  std::vector<char> seen(out.target_count, 0);
  bool inj = true;
  int hit = 0;
  for (State t : out.table) {
    if (seen[t]) inj = false;
    else { seen[t] = 1; ++hit; }
  }
  const bool surj = hit == out.target_count;
  out.role = inj && surj ? MapRole::Bijection
             : surj      ? MapRole::Surjection
                         : MapRole::Injection;
  if (!inj && !surj) throw DomainError("composite is neither injective nor surjective");
  return out;
}

namespace {

struct Budget {
  std::uint64_t used = 0;
  std::uint64_t limit = 0;
  bool hit = false;
  bool spend(std::uint64_t k) {
    used += k;
    if (used > limit) hit = true;
    return !hit;
  }
};

// Window indices at common radius R that either rule can depend on; every
// index when a neighborhood cannot be pinned down exactly and cheaply.
// Commutation constraints read nothing outside these slots, so scans may
// pin the remaining positions to any fixed state without losing windows.
std::vector<int> scan_slots(const Automaton& a, const Automaton& b, int R) {
  const int len = 2 * R + 1;
  std::vector<int> all(static_cast<std::size_t>(len));
  std::iota(all.begin(), all.end(), 0);
  auto exact = [](const Automaton& x) -> std::optional<std::vector<int>> {
    if (!x.shift_meta && !x.additive_meta && x.table_size() > (1u << 16))
      return std::nullopt;
    return minimal_neighborhood(x);
  };
  const auto na = exact(a);
  if (!na) return all;
  const auto nb = exact(b);
  if (!nb) return all;
  std::vector<int> slots;
  for (int o : *na) slots.push_back(R + o);
  for (int o : *nb) slots.push_back(R + o);
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  if (slots.empty()) slots.push_back(R);
  return slots;
}

std::vector<int> all_slots(int len) {
  std::vector<int> all(static_cast<std::size_t>(len));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

// Windows whose slot positions are drawn from pool and contain x at least
// once among the slots, x at its first slot occurrence; positions off the
// slot list stay pinned at x. fn returns false to stop early.
template <typename F>
bool for_windows_with(const std::vector<State>& pool, State x,
                      const std::vector<int>& slots, std::vector<State>& w,
                      F&& fn) {
  std::vector<State> others;
  others.reserve(pool.size());
  for (State s : pool)
    if (s != x) others.push_back(s);
  std::fill(w.begin(), w.end(), x);
  const int k = static_cast<int>(slots.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    if (p > 0 && others.empty()) break;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (int i = 0; i < p; ++i) w[slots[i]] = others[idx[i]];
      w[slots[p]] = x;
      for (int i = p + 1; i < k; ++i) w[slots[i]] = pool[idx[i]];
      if (!fn(w)) return false;
      int i = k - 1;
      for (; i >= 0; --i) {
        if (i == p) continue;
        const int cap =
            static_cast<int>(i < p ? others.size() : pool.size());
        if (++idx[i] < cap) break;
        idx[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return true;
}

struct SubSearch {
  const Automaton& a;
  const Automaton& b;
  int R;
  int len;
  std::vector<int> iota;
  std::vector<char> used;
  std::vector<State> assigned;
  std::vector<State> wb;
  std::vector<int> slots;
  std::vector<State> win;
  Budget budget;

  SubSearch(const Automaton& a_, const Automaton& b_, std::uint64_t limit)
      : a(a_), b(b_), R(std::max(a_.r, b_.r)), len(2 * R + 1),
        iota(a_.n, -1), used(b_.n, 0), wb(static_cast<std::size_t>(len)),
        win(static_cast<std::size_t>(len)) {
    budget.limit = limit;
    slots = checked_pow(a.n, static_cast<unsigned>(len)) > (1u << 16)
                ? scan_slots(a, b, R)
                : all_slots(len);
  }

  // Checks or forces the consequences of x joining the assigned set.
  bool propagate(State x, std::vector<State>& trail) {
    std::vector<State> queue{x};
    while (!queue.empty()) {
      const State y = queue.back();
      queue.pop_back();
      const bool ok = for_windows_with(
          assigned, y, slots, win, [&](const std::vector<State>& w) {
            if (!budget.spend(2)) return false;
            const State out_a = a.eval_at(w.data(), R);
            for (int i = 0; i < len; ++i)
              wb[i] = static_cast<State>(iota[w[i]]);
            const State out_b = b.eval_at(wb.data(), R);
            const int have = iota[out_a];
            if (have >= 0) return have == static_cast<int>(out_b);
            if (used[out_b]) return false;
            iota[out_a] = static_cast<int>(out_b);
            used[out_b] = 1;
            assigned.push_back(out_a);
            trail.push_back(out_a);
            queue.push_back(out_a);
            return true;
          });
      if (!ok) return false;
    }
    return true;
  }

  void undo(const std::vector<State>& trail, std::size_t keep) {
    for (std::size_t i = trail.size(); i > keep; --i) {
      const State s = trail[i - 1];
      used[iota[s]] = 0;
      iota[s] = -1;
      assigned.pop_back();
    }
  }

  bool extend() {
    if (budget.hit) return false;
    int k = -1;
    for (int i = 0; i < a.n; ++i)
      if (iota[i] < 0) { k = i; break; }
    if (k < 0) return true;
    for (int v = 0; v < b.n; ++v) {
      if (used[v]) continue;
      std::vector<State> trail;
      iota[k] = v;
      used[v] = 1;
      assigned.push_back(static_cast<State>(k));
      trail.push_back(static_cast<State>(k));
      if (propagate(static_cast<State>(k), trail)) {
        if (extend()) return true;
      }
      undo(trail, 0);
      if (budget.hit) return false;
    }
    return false;
  }
};

struct QuotSearch {
  const Automaton& a;
  const Automaton& b;
  int R;
  int len;
  std::vector<int> pi;
  std::vector<int> hits;
  int distinct_hit = 0;
  int unassigned = 0;
  std::vector<State> assigned;
  std::vector<State> wa;
  std::vector<int> slots;
  std::vector<State> win;
  Budget budget;

  QuotSearch(const Automaton& a_, const Automaton& b_, std::uint64_t limit)
      : a(a_), b(b_), R(std::max(a_.r, b_.r)), len(2 * R + 1),
        pi(b_.n, -1), hits(a_.n, 0), unassigned(b_.n),
        wa(static_cast<std::size_t>(len)),
        win(static_cast<std::size_t>(len)) {
    budget.limit = limit;
    slots = checked_pow(b.n, static_cast<unsigned>(len)) > (1u << 16)
                ? scan_slots(a, b, R)
                : all_slots(len);
  }

  bool feasible() const { return unassigned >= a.n - distinct_hit; }

  void set(State src, State val, std::vector<State>& trail) {
    pi[src] = static_cast<int>(val);
    if (hits[val]++ == 0) ++distinct_hit;
    --unassigned;
    assigned.push_back(src);
    trail.push_back(src);
  }

  bool propagate(State x, std::vector<State>& trail) {
    std::vector<State> queue{x};
    while (!queue.empty()) {
      const State y = queue.back();
      queue.pop_back();
      const bool ok = for_windows_with(
          assigned, y, slots, win, [&](const std::vector<State>& w) {
            if (!budget.spend(2)) return false;
            const State out_b = b.eval_at(w.data(), R);
            for (int i = 0; i < len; ++i)
              wa[i] = static_cast<State>(pi[w[i]]);
            const State out_a = a.eval_at(wa.data(), R);
            const int have = pi[out_b];
            if (have >= 0) return have == static_cast<int>(out_a);
            set(out_b, out_a, trail);
            if (!feasible()) return false;
            queue.push_back(out_b);
            return true;
          });
      if (!ok) return false;
    }
    return true;
  }

  void undo(const std::vector<State>& trail, std::size_t keep) {
    for (std::size_t i = trail.size(); i > keep; --i) {
      const State s = trail[i - 1];
      if (--hits[pi[s]] == 0) --distinct_hit;
      pi[s] = -1;
      ++unassigned;
      assigned.pop_back();
    }
  }

  bool extend() {
    if (budget.hit) return false;
    int k = -1;
    for (int i = 0; i < b.n; ++i)
      if (pi[i] < 0) { k = i; break; }
    if (k < 0) return distinct_hit == a.n;
    for (int v = 0; v < a.n; ++v) {
      std::vector<State> trail;
      set(static_cast<State>(k), static_cast<State>(v), trail);
      if (feasible() && propagate(static_cast<State>(k), trail)) {
        if (extend()) return true;
      }
      undo(trail, 0);
      if (budget.hit) return false;
    }
    return false;
  }
};

template <typename Eval>
bool scan_windows(int n, int len, const std::vector<int>& slots,
                  const CheckOptions& opts, CheckReport* report,
                  Eval&& check) {
  CheckReport local;
  CheckReport& rep = report ? *report : local;
  rep = {};
  const std::uint64_t total =
      checked_pow(static_cast<std::uint64_t>(n),
                  static_cast<unsigned>(slots.size()));
  std::vector<State> w(static_cast<std::size_t>(len), 0);
  if (total <= opts.exhaustive_limit) {
    bool more = true;
    while (more) {
      ++rep.windows;
      if (!check(w)) {
        rep.counterexample = w;
        return false;
      }
      more = false;
      for (std::size_t i = slots.size(); i-- > 0;) {
        State& c = w[static_cast<std::size_t>(slots[i])];
        if (static_cast<int>(++c) < n) {
          more = true;
          break;
        }
        c = 0;
      }
    }
    return true;
  }
  rep.exhaustive = false;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dist(0, n - 1);
  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    for (int p : slots) w[static_cast<std::size_t>(p)] =
        static_cast<State>(dist(rng));
    ++rep.windows;
    if (!check(w)) {
      rep.counterexample = w;
      return false;
    }
  }
  return true;
}

}  // namespace

bool check_subautomaton(const Automaton& a, const Automaton& b,
                        const StateMap& iota, const CheckOptions& opts,
                        CheckReport* report) {
  iota.validate();
  if (iota.role == MapRole::Surjection)
    throw DomainError("embedding check needs an injective map");
  if (iota.source_count != a.n || iota.target_count != b.n)
    throw DomainError("map sides do not match the automata");
  const int R = std::max(a.r, b.r);
  const int len = 2 * R + 1;
  std::vector<State> wb(static_cast<std::size_t>(len));
  const std::vector<int> slots =
      checked_pow(a.n, static_cast<unsigned>(len)) > (1u << 16)
          ? scan_slots(a, b, R)
          : all_slots(len);
  return scan_windows(a.n, len, slots, opts, report,
                      [&](const std::vector<State>& w) {
                        for (int i = 0; i < len; ++i)
                          wb[i] = iota.apply(w[i]);
                        return iota.apply(a.eval_at(w.data(), R)) ==
                               b.eval_at(wb.data(), R);
                      });
}

bool check_quotient(const Automaton& a, const Automaton& b,
                    const StateMap& pi, const CheckOptions& opts,
                    CheckReport* report) {
  pi.validate();
  if (pi.role == MapRole::Injection)
    throw DomainError("projection check needs a surjective map");
  if (pi.source_count != b.n || pi.target_count != a.n)
    throw DomainError("map sides do not match the automata");
  const int R = std::max(a.r, b.r);
  const int len = 2 * R + 1;
  std::vector<State> wa(static_cast<std::size_t>(len));
  const std::vector<int> slots =
      checked_pow(b.n, static_cast<unsigned>(len)) > (1u << 16)
          ? scan_slots(a, b, R)
          : all_slots(len);
  return scan_windows(b.n, len, slots, opts, report,
                      [&](const std::vector<State>& w) {
                        for (int i = 0; i < len; ++i)
                          wa[i] = pi.apply(w[i]);
                        return pi.apply(b.eval_at(w.data(), R)) ==
                               a.eval_at(wa.data(), R);
                      });
}

FindResult find_subautomaton(const Automaton& a, const Automaton& b,
                             const FindLimits& limits) {
  FindResult out;
  if (a.n > b.n) return out;
  SubSearch s(a, b, limits.eval_budget);
  const bool found = s.extend();
  out.evaluations = s.budget.used;
  out.exhaustive = !s.budget.hit;
  if (found) {
    StateMap m;
    m.source_count = a.n;
    m.target_count = b.n;
    m.role = a.n == b.n ? MapRole::Bijection : MapRole::Injection;
    m.table.assign(s.iota.begin(), s.iota.end());
    m.validate();
    out.map = std::move(m);
  }
  return out;
}

FindResult find_quotient(const Automaton& a, const Automaton& b,
                         const FindLimits& limits) {
  FindResult out;
  if (a.n > b.n) return out;
  QuotSearch s(a, b, limits.eval_budget);
  const bool found = s.extend();
  out.evaluations = s.budget.used;
  out.exhaustive = !s.budget.hit;
  if (found) {
    StateMap m;
    m.source_count = b.n;
    m.target_count = a.n;
    m.role = a.n == b.n ? MapRole::Bijection : MapRole::Surjection;
    m.table.assign(s.pi.begin(), s.pi.end());
    m.validate();
    out.map = std::move(m);
  }
  return out;
}

FindResult find_isomorphism(const Automaton& a, const Automaton& b,
                            const FindLimits& limits) {
  if (a.n != b.n) return {};
  FindResult out = find_subautomaton(a, b, limits);
  if (out.map) out.map->role = MapRole::Bijection;
  return out;
}

std::vector<std::vector<State>> stable_subsets(const Automaton& b) {
  if (b.n > kStableSubsetMax)
    throw InfeasibleError("stable subset enumeration past " +
                          std::to_string(kStableSubsetMax) + " states");
  const int len = b.window_len();
  std::uint64_t work = 0;
  for (int k = 1; k <= b.n; ++k) {
    // C(n, k) * k^len, saturating
    std::uint64_t c = 1;
    for (int i = 0; i < k; ++i) c = c * (b.n - i) / (i + 1);
    const std::uint64_t pw = checked_pow(static_cast<std::uint64_t>(k),
                                         static_cast<unsigned>(len));
    work += c > (1ull << 62) / std::max<std::uint64_t>(pw, 1) ? (1ull << 62)
                                                              : c * pw;
  }
  if (work > (1ull << 32))
    throw InfeasibleError("stable subset enumeration too large");

  std::vector<std::vector<State>> out;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask < (1u << b.n); ++mask)
    masks.push_back(mask);
  std::sort(masks.begin(), masks.end(),
            [](std::uint32_t x, std::uint32_t y) {
              const int px = std::popcount(x);
              const int py = std::popcount(y);
              return px != py ? px < py : x < y;
            });
  std::vector<State> pool;
  for (std::uint32_t mask : masks) {
    pool.clear();
    for (int i = 0; i < b.n; ++i)
      if (mask & (1u << i)) pool.push_back(static_cast<State>(i));
    std::vector<int> idx(static_cast<std::size_t>(len), 0);
    std::vector<State> w(static_cast<std::size_t>(len));
    bool stable = true;
    while (stable) {
      for (int i = 0; i < len; ++i) w[i] = pool[idx[i]];
      const State o = b.eval(w.data());
      if (!(mask & (1u << o))) stable = false;
      int i = len - 1;
      for (; i >= 0; --i) {
        if (++idx[i] < static_cast<int>(pool.size())) break;
        idx[i] = 0;
      }
      if (i < 0) break;
    }
    if (stable) out.push_back(pool);
  }
  return out;
}

Automaton restrict_to(const Automaton& b, const std::vector<State>& subset) {
  std::vector<int> local(b.n, -1);
  for (std::size_t i = 0; i < subset.size(); ++i)
    local[subset[i]] = static_cast<int>(i);
  auto base = std::make_shared<const Automaton>(b);
  auto sub = std::make_shared<const std::vector<State>>(subset);
  auto loc = std::make_shared<const std::vector<int>>(std::move(local));
  Automaton out;
  out.n = static_cast<int>(subset.size());
  out.r = b.r;
  out.label = b.label + "|Q";
  const int len = b.window_len();
  out.lazy = [base, sub, loc, len](const State* w) {
    State gw[64];
    std::vector<State> heap;
    State* p = gw;
    if (len > 64) {
      heap.resize(len);
      p = heap.data();
    }
    for (int i = 0; i < len; ++i) p[i] = (*sub)[w[i]];
    const State o = base->eval(p);
    const int l = (*loc)[o];
    if (l < 0) throw DomainError("subset is not stable");
    return static_cast<State>(l);
  };
  return finalize(std::move(out));
}

MixedResult find_mixed(const Automaton& a, const Automaton& b,
                       const FindLimits& limits) {
  MixedResult out;
  std::uint64_t spent = 0;
  for (const auto& subset : stable_subsets(b)) {
    if (static_cast<int>(subset.size()) < a.n) continue;
    Automaton restr = restrict_to(b, subset);
    FindLimits rest{limits.eval_budget - spent};
    FindResult r = find_quotient(a, restr, rest);
    spent += r.evaluations;
    out.evaluations = spent;
    if (!r.exhaustive) {
      out.exhaustive = false;
      return out;
    }
    if (r.map) {
      out.witness = MixedWitness{subset, *r.map};
      return out;
    }
  }
  return out;
}

std::vector<std::vector<int>> congruences_into(const Automaton& b, int k) {
  std::vector<std::vector<int>> out;
  if (k < 1 || k > b.n) return out;
  std::vector<int> rgs(b.n, 0);
  const int len = b.window_len();
  auto is_congruence = [&]() {
    std::unordered_map<std::uint64_t, int> image;
    std::vector<State> w(static_cast<std::size_t>(len), 0);
    do {
      std::uint64_t pat = 0;
      for (int i = 0; i < len; ++i) pat = pat * k + rgs[w[i]];
      const int ob = rgs[b.eval(w.data())];
      auto [it, fresh] = image.try_emplace(pat, ob);
      if (!fresh && it->second != ob) return false;
    } while (next_window(w, b.n));
    return true;
  };
  // Restricted growth strings: block ids numbered by first appearance.
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == b.n) {
      if (mx + 1 == k && is_congruence()) out.push_back(rgs);
      return;
    }
    const int hi = std::min(mx + 1, k - 1);
    for (int v = 0; v <= hi; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(mx, v));
    }
  };
  if (b.n == 1) {
    if (k == 1 && is_congruence()) out.push_back(rgs);
    return out;
  }
  rec(1, 0);
  return out;
}

}  // namespace bulkca
