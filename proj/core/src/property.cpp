#include "bulkca/property.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace bulkca {

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    default: return "unknown";
  }
}

bool is_balanced(const Automaton& a) {
  const std::uint64_t total = a.table_size();
  if (!a.materialized() && total > kMaterializeLimit)
    throw InfeasibleError("balance needs a materializable rule table");
  std::vector<std::uint64_t> count(a.n, 0);
  if (a.materialized()) {
    for (State s : a.table) ++count[s];
  } else {
    std::vector<State> w(a.window_len(), 0);
    do {
      ++count[a.eval(w.data())];
    } while (next_window(w, a.n));
  }
  for (int i = 1; i < a.n; ++i)
    if (count[i] != count[0]) return false;
  return true;
}

namespace {

// Overlap word of 2r states coded base n, most significant first.
struct DeBruijn {
  int n;
  int r;
  std::uint64_t vertices;

  std::uint64_t suffix_step(std::uint64_t u, State x) const {
    if (r == 0) return 0;
    const std::uint64_t mod = vertices / n;
    return (u % mod) * n + x;
  }
};

std::string subset_key(const std::vector<std::uint64_t>& bits) {
  return std::string(reinterpret_cast<const char*>(bits.data()),
                     bits.size() * sizeof(std::uint64_t));
}

Verdict combine_product(const Verdict& l, const Verdict& r) {
  Verdict out;
  if (l.status == Status::Fails || r.status == Status::Fails) {
    out.status = Status::Fails;
    return out;
  }
  if (l.status == Status::Unknown || r.status == Status::Unknown) {
    out.status = Status::Unknown;
    out.note = "component analyzer gave up";
    return out;
  }
  out.status = Status::Holds;
  return out;
}

std::vector<State> zip_words(const std::vector<State>& u,
                             const std::vector<State>& v, int n_right) {
  std::vector<State> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = u[i] * n_right + v[i];
  return out;
}

}  // namespace

Verdict is_surjective(const Automaton& a) {
  if (a.product_meta) {
    const Automaton& l = a.product_meta->left;
    const Automaton& rt = a.product_meta->right;
    Verdict vl = is_surjective(l);
    Verdict vr = is_surjective(rt);
    Verdict out = combine_product(vl, vr);
    if (out.status == Status::Fails) {
      // A word is orphaned once either component word is.
      std::vector<std::vector<State>> cands;
      if (vl.status == Status::Fails && vl.orphan)
        cands.push_back(zip_words(
            *vl.orphan, std::vector<State>(vl.orphan->size(), 0), rt.n));
      if (vr.status == Status::Fails && vr.orphan)
        cands.push_back(zip_words(
            std::vector<State>(vr.orphan->size(), 0), *vr.orphan, rt.n));
      if (!cands.empty()) {
        std::sort(cands.begin(), cands.end(),
                  [](const auto& x, const auto& y) {
                    return x.size() != y.size() ? x.size() < y.size()
                                                : x < y;
                  });
        out.orphan = cands.front();
      }
      return out;
    }
    return out;
  }

  const std::uint64_t windows = a.table_size();
  const std::uint64_t verts = checked_pow(a.n, static_cast<unsigned>(2 * a.r));
  Verdict out;
  if (windows > kMaterializeLimit || verts > (1ull << 20)) {
    out.status = Status::Unknown;
    out.note = "rule too large for the image subset construction";
    return out;
  }

  DeBruijn db{a.n, a.r, verts};
  // CSR successor lists: for vertex u and output o, the next vertices.
  std::vector<std::uint32_t> off(verts * a.n + 1, 0);
  std::vector<State> w(a.window_len(), 0);
  do {
    std::uint64_t u = 0;
    for (int i = 0; i < 2 * a.r; ++i) u = u * a.n + w[i];
    const State o = a.eval(w.data());
    ++off[u * a.n + o + 1];
  } while (next_window(w, a.n));
  for (std::size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
  std::vector<std::uint32_t> dat(windows);
  {
    std::vector<std::uint32_t> cur(off.begin(), off.end() - 1);
    std::fill(w.begin(), w.end(), 0);
    do {
      std::uint64_t u = 0;
      for (int i = 0; i < 2 * a.r; ++i) u = u * a.n + w[i];
      const State o = a.eval(w.data());
      const std::uint64_t v = db.suffix_step(u, w[2 * a.r]);
      dat[cur[u * a.n + o]++] = static_cast<std::uint32_t>(v);
    } while (next_window(w, a.n));
  }

  const std::size_t nwords = (verts + 63) / 64;
  std::vector<std::uint64_t> full(nwords, 0);
  for (std::uint64_t v = 0; v < verts; ++v)
    full[v >> 6] |= 1ull << (v & 63);

  struct Node {
    std::vector<std::uint64_t> bits;
    int prev;
    State symbol;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> seen;
  nodes.push_back({full, -1, 0});
  seen.emplace(subset_key(full), 0);
  std::vector<std::uint64_t> nxt(nwords);
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes.size() > kSubsetBudget) {
      out.status = Status::Unknown;
      out.note = "image subset construction exceeded its budget";
      return out;
    }
    for (int o = 0; o < a.n; ++o) {
      std::fill(nxt.begin(), nxt.end(), 0);
      const auto& bits = nodes[head].bits;
      bool empty = true;
      for (std::uint64_t u = 0; u < verts; ++u) {
        if (!(bits[u >> 6] & (1ull << (u & 63)))) continue;
        for (std::uint32_t k = off[u * a.n + o]; k < off[u * a.n + o + 1];
             ++k) {
          nxt[dat[k] >> 6] |= 1ull << (dat[k] & 63);
          empty = false;
        }
      }
      if (empty) {
        // Walk back for the shortest orphan, first in symbol order.
        std::vector<State> orphan{static_cast<State>(o)};
        for (int at = static_cast<int>(head); nodes[at].prev >= 0;
             at = nodes[at].prev)
          orphan.push_back(nodes[at].symbol);
        std::reverse(orphan.begin(), orphan.end());
        out.status = Status::Fails;
        out.orphan = std::move(orphan);
        return out;
      }
      auto [it, fresh] =
          seen.emplace(subset_key(nxt), static_cast<int>(nodes.size()));
      if (fresh)
        nodes.push_back({nxt, static_cast<int>(head), static_cast<State>(o)});
    }
  }
  out.status = Status::Holds;
  return out;
}

Verdict is_injective(const Automaton& a) {
  if (a.product_meta) {
    const Automaton& l = a.product_meta->left;
    const Automaton& rt = a.product_meta->right;
    Verdict vl = is_injective(l);
    Verdict vr = is_injective(rt);
    Verdict out = combine_product(vl, vr);
    if (out.status == Status::Fails) {
      const bool left_bad = vl.status == Status::Fails;
      const Verdict& bad = left_bad ? vl : vr;
      if (bad.collision) {
        // Pair the colliding component with a shared zero track.
        auto lift = [&](const PeriodicConfig& c) {
          PeriodicConfig out_c;
          out_c.n = a.n;
          out_c.word.resize(c.word.size());
          for (int z = 0; z < c.size(); ++z)
            out_c.word[z] = left_bad ? c.at(z) * rt.n : c.at(z);
          return out_c;
        };
        out.collision = {lift(bad.collision->first),
                         lift(bad.collision->second)};
      }
      return out;
    }
    return out;
  }

  Verdict out;
  const std::uint64_t verts = checked_pow(a.n, static_cast<unsigned>(4 * a.r));
  const std::uint64_t edges =
      checked_pow(a.n, static_cast<unsigned>(4 * a.r + 2));
  if (verts > kPairBudget || edges > (1ull << 26)) {
    out.status = Status::Unknown;
    out.note = "rule too large for the pair-graph construction";
    return out;
  }

  const std::uint64_t half = checked_pow(a.n, static_cast<unsigned>(2 * a.r));
  DeBruijn db{a.n, a.r, half};
  const int len = a.window_len();

  // Pair vertex (u, v) coded u * half + v; edges keep equal outputs.
  auto decode = [&](std::uint64_t p) {
    return std::pair<std::uint64_t, std::uint64_t>{p / half, p % half};
  };

  std::vector<State> wu(len), wv(len);
  auto window_fill = [&](std::uint64_t u, State x, std::vector<State>& w) {
    for (int i = 2 * a.r - 1; i >= 0; --i) {
      w[i] = static_cast<State>(u % a.n);
      u /= a.n;
    }
    w[2 * a.r] = x;
  };

  // CSR over pair vertices; edge labels (x, y) stored alongside.
  std::vector<std::uint32_t> off(verts + 1, 0);
  for (std::uint64_t p = 0; p < verts; ++p) {
    auto [u, v] = decode(p);
    int cnt = 0;
    for (int x = 0; x < a.n; ++x) {
      window_fill(u, static_cast<State>(x), wu);
      const State ox = a.eval(wu.data());
      for (int y = 0; y < a.n; ++y) {
        window_fill(v, static_cast<State>(y), wv);
        if (a.eval(wv.data()) == ox) ++cnt;
      }
    }
    off[p + 1] = off[p] + cnt;
  }
  std::vector<std::uint32_t> dat(off[verts]);
  std::vector<std::pair<State, State>> lab(off[verts]);
  {
    std::vector<std::uint32_t> cur(off.begin(), off.end() - 1);
    for (std::uint64_t p = 0; p < verts; ++p) {
      auto [u, v] = decode(p);
      for (int x = 0; x < a.n; ++x) {
        window_fill(u, static_cast<State>(x), wu);
        const State ox = a.eval(wu.data());
        for (int y = 0; y < a.n; ++y) {
          window_fill(v, static_cast<State>(y), wv);
          if (a.eval(wv.data()) != ox) continue;
          const std::uint64_t q =
              db.suffix_step(u, static_cast<State>(x)) * half +
              db.suffix_step(v, static_cast<State>(y));
          dat[cur[p]] = static_cast<std::uint32_t>(q);
          lab[cur[p]] = {static_cast<State>(x), static_cast<State>(y)};
          ++cur[p];
        }
      }
    }
  }

  // Iterative Tarjan; cyclic SCC holding a non-diagonal pair = collision.
  std::vector<int> index(verts, -1), low(verts, 0), comp(verts, -1);
  std::vector<char> on_stack(verts, 0);
  std::vector<std::uint32_t> stack;
  int next_index = 0, next_comp = 0;
  std::vector<int> comp_size;
  struct Frame {
    std::uint32_t v;
    std::uint32_t edge;
  };
  std::vector<Frame> call;
  for (std::uint64_t root = 0; root < verts; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({static_cast<std::uint32_t>(root), off[root]});
    index[root] = low[root] = next_index++;
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < off[f.v + 1]) {
        const std::uint32_t to = dat[f.edge++];
        if (index[to] < 0) {
          index[to] = low[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = 1;
          call.push_back({to, off[to]});
        } else if (on_stack[to]) {
          low[f.v] = std::min(low[f.v], index[to]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          int size = 0;
          while (true) {
            const std::uint32_t x = stack.back();
            stack.pop_back();
            on_stack[x] = 0;
            comp[x] = next_comp;
            ++size;
            if (x == f.v) break;
          }
          comp_size.push_back(size);
          ++next_comp;
        }
        const std::uint32_t done = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[done]);
      }
    }
  }

  auto on_cycle = [&](std::uint64_t p) {
    if (comp_size[comp[p]] >= 2) return true;
    for (std::uint32_t k = off[p]; k < off[p + 1]; ++k)
      if (dat[k] == p) return true;
    return false;
  };

  std::int64_t bad = -1;
  for (std::uint64_t p = 0; p < verts; ++p) {
    auto [u, v] = decode(p);
    if (u != v && on_cycle(p)) {
      bad = static_cast<std::int64_t>(p);
      break;
    }
  }
  if (bad < 0) {
    out.status = Status::Holds;
    return out;
  }

  // Shortest cycle through bad inside its component, by BFS.
  const int want = comp[bad];
  std::vector<int> prev(verts, -2);
  std::vector<std::uint32_t> via(verts, 0);
  std::deque<std::uint32_t> q;
  prev[bad] = -1;
  q.push_back(static_cast<std::uint32_t>(bad));
  std::int64_t closed_from = -1;
  while (!q.empty() && closed_from < 0) {
    const std::uint32_t at = q.front();
    q.pop_front();
    for (std::uint32_t k = off[at]; k < off[at + 1]; ++k) {
      const std::uint32_t to = dat[k];
      if (comp[to] != want) continue;
      if (to == static_cast<std::uint64_t>(bad)) {
        closed_from = at;
        via[bad] = k;
        break;
      }
      if (prev[to] != -2) continue;
      prev[to] = static_cast<int>(at);
      via[to] = k;
      q.push_back(to);
    }
  }
  if (closed_from < 0) {
    out.status = Status::Unknown;
    out.note = "cycle reconstruction failed";
    return out;
  }
  std::vector<std::uint32_t> path_edges;
  path_edges.push_back(via[bad]);
  for (std::int64_t at = closed_from; at != static_cast<std::int64_t>(bad);
       at = prev[at])
    path_edges.push_back(via[at]);
  std::reverse(path_edges.begin(), path_edges.end());

  PeriodicConfig cx, cy;
  cx.n = a.n;
  cy.n = a.n;
  for (std::uint32_t e : path_edges) {
    cx.word.push_back(lab[e].first);
    cy.word.push_back(lab[e].second);
  }
  out.status = Status::Fails;
  out.collision = {std::move(cx), std::move(cy)};
  return out;
}

std::optional<Automaton> inverse(const Automaton& a, int r_max) {
  for (int rho = 0; rho <= r_max; ++rho) {
    const std::uint64_t scan =
        checked_pow(a.n, static_cast<unsigned>(2 * (rho + a.r) + 1));
    if (scan > kInverseScanLimit)
      throw InfeasibleError("inverse forcing scan too large");
    const std::uint64_t entries =
        checked_pow(a.n, static_cast<unsigned>(2 * rho + 1));
    if (entries > kMaterializeLimit)
      throw InfeasibleError("inverse table too large to materialize");
    std::vector<State> g(entries, 0);
    std::vector<char> fixed(entries, 0);
    const int vlen = 2 * (rho + a.r) + 1;
    const int olen = 2 * rho + 1;
    std::vector<State> v(vlen, 0);
    std::vector<State> outw(olen);
    bool ok = true;
    do {
      for (int i = 0; i < olen; ++i) outw[i] = a.eval(&v[i]);
      std::uint64_t idx = 0;
      for (int i = 0; i < olen; ++i) idx = idx * a.n + outw[i];
      const State center = v[rho + a.r];
      if (fixed[idx] && g[idx] != center) {
        ok = false;
        break;
      }
      fixed[idx] = 1;
      g[idx] = center;
    } while (next_window(v, a.n));
    if (!ok) continue;
    Automaton inv;
    inv.n = a.n;
    inv.r = rho;
    inv.label = (a.label.empty() ? "?" : a.label) + "^-1";
    inv.table = std::move(g);
    return inv;
  }
  return std::nullopt;
}

std::optional<bool> try_lr_permutative(const Automaton& a) {
  if (a.table_size() > kExhaustiveScanLimit) return std::nullopt;
  const int len = a.window_len();
  if (a.r == 0) {
    // Single-cell windows: both borders are the center.
    std::vector<char> seen(a.n, 0);
    for (int x = 0; x < a.n; ++x) {
      State s = static_cast<State>(x);
      const State o = a.eval(&s);
      if (seen[o]) return false;
      seen[o] = 1;
    }
    return true;
  }
  for (int side = 0; side < 2; ++side) {
    const int pos = side == 0 ? 0 : len - 1;
    std::vector<State> w(len, 0);
    std::vector<char> seen(a.n);
    // Iterate contexts with the border cell pinned to zero.
    do {
      if (w[pos] != 0) continue;
      std::fill(seen.begin(), seen.end(), 0);
      std::vector<State> v = w;
      for (int x = 0; x < a.n; ++x) {
        v[pos] = static_cast<State>(x);
        const State o = a.eval(v.data());
        if (seen[o]) return false;
        seen[o] = 1;
      }
    } while (next_window(w, a.n));
  }
  return true;
}

bool is_lr_permutative(const Automaton& a) {
  auto r = try_lr_permutative(a);
  if (!r)
    throw InfeasibleError("permutativity scan too large");
  return *r;
}

std::vector<State> quiescent_states(const Automaton& a) {
  std::vector<State> out;
  std::vector<State> w(a.window_len());
  for (int q = 0; q < a.n; ++q) {
    std::fill(w.begin(), w.end(), static_cast<State>(q));
    if (a.eval(w.data()) == static_cast<State>(q))
      out.push_back(static_cast<State>(q));
  }
  return out;
}

std::vector<State> spreading_states(const Automaton& a) {
  std::vector<int> nbhd = minimal_neighborhood(a);
  // A state can only spread by overriding cells it reaches from a
  // non-central offset.
  bool nontrivial = false;
  for (int o : nbhd)
    if (o != 0) nontrivial = true;
  if (!nontrivial) return {};
  if (a.table_size() > kExhaustiveScanLimit)
    throw InfeasibleError("spreading scan too large");
  std::vector<char> alive(a.n, 1);
  std::vector<State> w(a.window_len(), 0);
  do {
    const State o = a.eval(w.data());
    for (int off : nbhd) {
      const State k = w[a.r + off];
      if (alive[k] && o != k) alive[k] = 0;
    }
  } while (next_window(w, a.n));
  std::vector<State> out;
  for (int k = 0; k < a.n; ++k)
    if (alive[k]) out.push_back(static_cast<State>(k));
  return out;
}

bool is_captive(const Automaton& a, CaptiveReport* report) {
  CaptiveReport local;
  CaptiveReport& rep = report ? *report : local;
  rep = {};
  const int len = a.window_len();
  std::vector<State> w(len, 0);
  if (a.table_size() <= kExhaustiveScanLimit) {
    do {
      ++rep.windows;
      const State o = a.eval(w.data());
      bool found = false;
      for (int i = 0; i < len && !found; ++i) found = w[i] == o;
      if (!found) return false;
    } while (next_window(w, a.n));
    return true;
  }
  rep.exhaustive = false;
  std::mt19937_64 rng(0x5eedcab1eull);
  std::uniform_int_distribution<int> dist(0, a.n - 1);
  for (std::uint64_t k = 0; k < (1ull << 20); ++k) {
    for (int i = 0; i < len; ++i) w[i] = static_cast<State>(dist(rng));
    ++rep.windows;
    const State o = a.eval(w.data());
    bool found = false;
    for (int i = 0; i < len && !found; ++i) found = w[i] == o;
    if (!found) return false;
  }
  return true;
}

namespace {

std::string cfg_key(const PeriodicConfig& c) {
  const PeriodicConfig n = c.normalized();
  return std::string(reinterpret_cast<const char*>(n.word.data()),
                     n.word.size() * sizeof(State));
}

}  // namespace

Verdict nilpotent_over_periodic(const Automaton& a, int max_period,
                                int max_transient) {
  Verdict out;
  std::vector<std::vector<PeriodicConfig>> cycles;
  std::unordered_set<std::string> cycle_members;
  bool unresolved = false;

  for (int L = 1; L <= max_period; ++L) {
    PeriodicConfig c;
    c.n = a.n;
    c.word.assign(L, 0);
    std::vector<State>& word = c.word;
    bool more = true;
    while (more) {
      // Follow the orbit to its cycle.
      std::unordered_map<std::string, int> seen;
      std::vector<PeriodicConfig> path;
      PeriodicConfig cur = c.normalized();
      int enter = -1;
      for (int t = 0; t <= max_transient; ++t) {
        const std::string key = cfg_key(cur);
        auto [it, fresh] = seen.try_emplace(key, t);
        if (!fresh) {
          enter = it->second;
          break;
        }
        path.push_back(cur);
        cur = step(a, cur).normalized();
      }
      if (enter < 0) {
        unresolved = true;
      } else {
        std::vector<PeriodicConfig> cyc(path.begin() + enter, path.end());
        if (!cycle_members.count(cfg_key(cyc.front()))) {
          for (const auto& cc : cyc) cycle_members.insert(cfg_key(cc));
          cycles.push_back(std::move(cyc));
          if (cycles.size() >= 2) {
            out.status = Status::Fails;
            out.cycle_pair = {cycles[0], cycles[1]};
            out.note = "two disjoint cycles certify non-nilpotency";
            return out;
          }
        }
      }
      more = next_window(word, a.n);
    }
  }

  out.status = Status::Unknown;
  if (cycles.size() == 1 && !unresolved) {
    if (cycles[0].size() == 1) {
      out.note = "every probed orbit reaches the single fixed point "
                 "within the bounds; consistent with nilpotency";
    } else {
      out.status = Status::Fails;
      out.cycle_pair = {cycles[0], std::vector<PeriodicConfig>{}};
      out.note = "a cycle of length >= 2 rules nilpotency out";
    }
  } else if (unresolved) {
    out.note = "some orbits did not close within the transient bound";
  } else {
    out.note = "no cycle information within the bounds";
  }
  return out;
}

}  // namespace bulkca
