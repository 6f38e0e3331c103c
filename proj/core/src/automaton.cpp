#include "bulkca/automaton.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <string>
#include <unordered_map>

namespace bulkca {

std::uint64_t checked_pow(std::uint64_t n, unsigned k) {
  constexpr std::uint64_t cap = 1ull << 62;
  std::uint64_t out = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n != 0 && out > cap / n) return cap;
    out *= n;
  }
  return out;
}

bool next_window(std::vector<State>& w, int n) {
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
    if (static_cast<int>(++w[i]) < n) return true;
    w[i] = 0;
  }
  return false;
}

State Automaton::eval(const State* w) const {
  if (!table.empty()) {
    std::uint64_t idx = 0;
    const int len = 2 * r + 1;
    for (int i = 0; i < len; ++i) idx = idx * n + w[i];
    return table[idx];
  }
  return lazy(w);
}

Automaton finalize(Automaton a) {
  if (a.materialized()) return a;
  const std::uint64_t size = a.table_size();
  if (size > kMaterializeLimit) return a;
  std::vector<State> t;
  t.reserve(size);
  std::vector<State> w(a.window_len(), 0);
  do {
    t.push_back(a.lazy(w.data()));
  } while (next_window(w, a.n));
  a.table = std::move(t);
  a.lazy = nullptr;
  return a;
}

Automaton make_table_automaton(int n, int r, std::vector<State> table,
                               std::string label) {
  if (n < 1 || r < 0) throw DomainError("state count or radius out of range");
  const std::uint64_t want = checked_pow(static_cast<std::uint64_t>(n),
                                         static_cast<unsigned>(2 * r + 1));
  if (table.size() != want)
    throw DomainError("rule table has " + std::to_string(table.size()) +
                      " entries, expected " + std::to_string(want));
  for (State s : table)
    if (static_cast<int>(s) >= n) throw DomainError("table entry out of range");
  Automaton a;
  a.n = n;
  a.r = r;
  a.label = std::move(label);
  a.table = std::move(table);
  return a;
}

PeriodicConfig PeriodicConfig::normalized() const {
  const int L = size();
  for (int p = 1; p <= L; ++p) {
    if (L % p != 0) continue;
    bool ok = true;
    for (int i = p; i < L && ok; ++i) ok = word[i] == word[i - p];
    if (ok) {
      PeriodicConfig out;
      out.n = n;
      out.word.assign(word.begin(), word.begin() + p);
      return out;
    }
  }
  return *this;
}

bool PeriodicConfig::operator==(const PeriodicConfig& o) const {
  if (n != o.n) return false;
  PeriodicConfig a = normalized();
  PeriodicConfig b = o.normalized();
  return a.word == b.word;
}

PeriodicConfig replicate(const PeriodicConfig& c, int k) {
  if (k < 1) throw DomainError("replication factor must be positive");
  PeriodicConfig out;
  out.n = c.n;
  out.word.reserve(c.word.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    out.word.insert(out.word.end(), c.word.begin(), c.word.end());
  return out;
}

PeriodicConfig shift_config(const PeriodicConfig& c, long long s) {
  const int L = c.size();
  PeriodicConfig out;
  out.n = c.n;
  out.word.resize(c.word.size());
  for (int z = 0; z < L; ++z) out.word[z] = c.at(z - s);
  return out;
}

PeriodicConfig rotate(const PeriodicConfig& c, long long k) {
  return shift_config(c, -k);
}

PeriodicConfig mirror_config(const PeriodicConfig& c) {
  const int L = c.size();
  PeriodicConfig out;
  out.n = c.n;
  out.word.resize(c.word.size());
  for (int z = 0; z < L; ++z) out.word[z] = c.at(-z);
  return out;
}

PeriodicConfig step(const Automaton& a, const PeriodicConfig& c) {
  if (c.n != a.n) throw DomainError("configuration alphabet mismatch");
  const int L = c.size();
  const int len = a.window_len();
  PeriodicConfig out;
  out.n = c.n;
  out.word.resize(c.word.size());
  std::vector<State> w(len);
  for (int z = 0; z < L; ++z) {
    for (int i = 0; i < len; ++i) w[i] = c.at(z - a.r + i);
    out.word[z] = a.eval(w.data());
  }
  return out;
}

PeriodicConfig iterate(const Automaton& a, PeriodicConfig c, int t) {
  for (int i = 0; i < t; ++i) c = step(a, c);
  return c;
}

Automaton power(const Automaton& a, int t) {
  if (t < 0) throw DomainError("power exponent must be non-negative");
  if (t == 0) {
    Automaton id;
    id.n = a.n;
    id.r = 0;
    id.label = a.label + "^0";
    id.lazy = [](const State* w) { return w[0]; };
    return finalize(id);
  }
  if (t == 1) return a;
  const int R = a.r * t;
  auto base = std::make_shared<const Automaton>(a);
  Automaton out;
  out.n = a.n;
  out.r = R;
  out.label = a.label.empty() ? "" : a.label + "^" + std::to_string(t);
  out.lazy = [base, t, R](const State* w) {
    const int r = base->r;
    std::vector<State> cur(w, w + 2 * R + 1);
    std::vector<State> nxt;
    for (int k = 0; k < t; ++k) {
      const int width = static_cast<int>(cur.size()) - 2 * r;
      nxt.resize(width);
      for (int i = 0; i < width; ++i) nxt[i] = base->eval(&cur[i]);
      cur.swap(nxt);
    }
    return cur[0];
  };
  return finalize(out);
}

Automaton product(const Automaton& a, const Automaton& b) {
  if (b.n != 0 && a.n > INT_MAX / b.n)
    throw DomainError("product state count overflows");
  Automaton out;
  out.n = a.n * b.n;
  out.r = std::max(a.r, b.r);
  out.label = "(" + (a.label.empty() ? "?" : a.label) + "x" +
              (b.label.empty() ? "?" : b.label) + ")";
  auto parts = std::make_shared<const ProductParts>(ProductParts{a, b});
  out.product_meta = parts;
  const int R = out.r;
  const int bn = b.n;
  out.lazy = [parts, R, bn](const State* w) {
    const int len = 2 * R + 1;
    State sa[64];
    State sb[64];
    std::vector<State> va, vb;
    State* pa = sa;
    State* pb = sb;
    if (len > 64) {
      va.resize(len);
      vb.resize(len);
      pa = va.data();
      pb = vb.data();
    }
    for (int i = 0; i < len; ++i) {
      pa[i] = w[i] / bn;
      pb[i] = w[i] % bn;
    }
    const State oa = parts->left.eval_at(pa, R);
    const State ob = parts->right.eval_at(pb, R);
    return oa * bn + ob;
  };
  return finalize(out);
}

Automaton canonicalize_radius(const Automaton& a, int R) {
  if (R < a.r) throw DomainError("radius can only grow");
  if (R == a.r) return a;
  Automaton out = a;
  out.r = R;
  out.table.clear();
  auto base = std::make_shared<const Automaton>(a);
  out.lazy = [base, R](const State* w) { return base->eval_at(w, R); };
  return finalize(std::move(out));
}

namespace {

std::string config_key(const PeriodicConfig& c) {
  return std::string(reinterpret_cast<const char*>(c.word.data()),
                     c.word.size() * sizeof(State));
}

}  // namespace

std::optional<std::pair<int, int>> orbit_cycle(const Automaton& a,
                                               const PeriodicConfig& c,
                                               int t_max) {
  std::unordered_map<std::string, int> seen;
  PeriodicConfig cur = c.normalized();
  for (int t = 0; t <= t_max; ++t) {
    auto [it, fresh] = seen.try_emplace(config_key(cur), t);
    if (!fresh) return std::pair<int, int>{it->second, t - it->second};
    cur = step(a, cur).normalized();
  }
  return std::nullopt;
}

std::vector<int> minimal_neighborhood(const Automaton& a,
                                      const NeighborhoodOptions& opts,
                                      NeighborhoodReport* report) {
  NeighborhoodReport local;
  NeighborhoodReport& rep = report ? *report : local;
  rep = {};

  if (a.shift_meta) {
    std::vector<int> offs;
    for (const auto& f : a.shift_meta->factors)
      offs.push_back(static_cast<int>(-f.vector));
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    return offs;
  }
  if (a.additive_meta) return {-1, 0, 1};

  const int len = a.window_len();
  const std::uint64_t total = a.table_size();
  std::vector<int> out;
  if (total <= kExhaustiveScanLimit) {
    std::vector<State> w(len, 0);
    std::vector<State> v(len, 0);
    for (int p = 0; p < len; ++p) {
      bool matters = false;
      std::fill(w.begin(), w.end(), 0);
      do {
        if (w[p] != 0) continue;
        v = w;
        const State base = a.eval(v.data());
        ++rep.evaluations;
        for (int x = 1; x < a.n && !matters; ++x) {
          v[p] = static_cast<State>(x);
          ++rep.evaluations;
          if (a.eval(v.data()) != base) matters = true;
        }
        v[p] = 0;
      } while (!matters && next_window(w, a.n));
      if (matters) out.push_back(p - a.r);
    }
    return out;
  }

  if (!opts.allow_sampling)
    throw InfeasibleError(
        "rule too large for an exhaustive neighborhood scan; enable "
        "sampling for a non-exhaustive answer");
  rep.exhaustive = false;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dist(0, a.n - 1);
  std::vector<char> matters(len, 0);
  std::vector<State> w(len);
  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    for (int i = 0; i < len; ++i) w[i] = static_cast<State>(dist(rng));
    const State base = a.eval(w.data());
    ++rep.evaluations;
    for (int p = 0; p < len; ++p) {
      if (matters[p]) continue;
      const State keep = w[p];
      w[p] = static_cast<State>((keep + 1) % a.n);
      ++rep.evaluations;
      if (a.eval(w.data()) != base) matters[p] = 1;
      w[p] = keep;
    }
  }
  for (int p = 0; p < len; ++p)
    if (matters[p]) out.push_back(p - a.r);
  return out;
}

}  // namespace bulkca
