#include "bulkca/zoo.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bulkca {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Shift radii index windows with plain ints; anything larger is absurd.
constexpr long long kShiftVectorMax = 1ll << 20;

void validate_shift_product(const ShiftProduct& sp) {
  if (sp.factors.empty())
    throw DomainError("shift product needs at least one factor");
  std::set<long long> seen;
  for (const auto& f : sp.factors) {
    if (f.states < 2)
      throw DomainError("shift product factors need at least 2 states");
    if (!seen.insert(f.vector).second)
      throw DomainError("shift product vectors must be pairwise distinct");
  }
}

}  // namespace

Automaton additive(int p) {
  if (p < 2) throw DomainError("additive rule needs modulus >= 2");
  Automaton a;
  a.n = p;
  a.r = 1;
  a.label = "additive(" + std::to_string(p) + ")";
  a.additive_meta = p;
  a.lazy = [p](const State* w) {
    return static_cast<State>(
        (static_cast<std::uint64_t>(w[0]) + w[1] + w[2]) % p);
  };
  return finalize(std::move(a));
}

Automaton shift(int n, long long z) {
  if (n < 1) throw DomainError("shift needs at least one state");
  if (z > kShiftVectorMax || z < -kShiftVectorMax)
    throw InfeasibleError("shift vector exceeds the supported range");
  Automaton a;
  a.n = n;
  a.r = static_cast<int>(z < 0 ? -z : z);
  a.label = "shift(" + std::to_string(n) + "," + std::to_string(z) + ")";
  if (n >= 2) {
    auto sp = std::make_shared<ShiftProduct>();
    sp->factors.push_back({n, z});
    a.shift_meta = std::move(sp);
  }
  const int idx = static_cast<int>(a.r - z);
  a.lazy = [idx](const State* w) { return w[idx]; };
  return finalize(std::move(a));
}

Automaton identity_automaton(int n) {
  Automaton a = shift(n, 0);
  a.label = "identity(" + std::to_string(n) + ")";
  return a;
}

Automaton shift_product(const ShiftProduct& sp) {
  validate_shift_product(sp);
  const int k = static_cast<int>(sp.factors.size());
  Automaton out = shift(sp.factors[0].states, sp.factors[0].vector);
  for (int i = 1; i < k; ++i)
    out = product(out, shift(sp.factors[i].states, sp.factors[i].vector));
  if (!out.materialized()) {
    // One gather per track instead of k nested product evaluations.
    const int R = out.r;
    std::vector<int> offs(k), mods(k);
    std::vector<State> strides(k);
    State stride = 1;
    for (int i = k - 1; i >= 0; --i) {
      strides[i] = stride;
      mods[i] = sp.factors[i].states;
      offs[i] = static_cast<int>(R - sp.factors[i].vector);
      stride = static_cast<State>(stride * sp.factors[i].states);
    }
    out.lazy = [offs, mods, strides, k](const State* w) {
      State v = 0;
      for (int i = 0; i < k; ++i)
        v = static_cast<State>(v + (w[offs[i]] / strides[i]) % mods[i] *
                                       strides[i]);
      return v;
    };
  }
  out.shift_meta = std::make_shared<ShiftProduct>(sp);
  std::string lab = "shiftprod(";
  for (int i = 0; i < k; ++i) {
    if (i) lab += ",";
    lab += std::to_string(sp.factors[i].states) + ":" +
           std::to_string(sp.factors[i].vector);
  }
  out.label = lab + ")";
  return out;
}

std::vector<Rational> characteristic_sequence(const ShiftProduct& sp) {
  validate_shift_product(sp);
  if (sp.factors.size() < 3)
    throw DomainError("characteristic sequence needs at least 3 vectors");
  std::vector<long long> zs;
  zs.reserve(sp.factors.size());
  for (const auto& f : sp.factors) zs.push_back(f.vector);
  std::sort(zs.begin(), zs.end());
  const long long den0 = zs[1] - zs[0];
  std::vector<Rational> out;
  out.reserve(zs.size() - 2);
  for (std::size_t i = 2; i < zs.size(); ++i) {
    const long long num = zs[i] - zs[0];
    const long long g = std::gcd(num, den0);
    out.push_back({num / g, den0 / g});
  }
  return out;
}

int shift_product_level(const ShiftProduct& sp) {
  validate_shift_product(sp);
  return static_cast<int>(sp.factors.size());
}

Automaton delta_max(int n) {
  if (n < 1) throw DomainError("max rule needs at least one state");
  Automaton a;
  a.n = n;
  a.r = 1;
  a.label = "deltamax(" + std::to_string(n) + ")";
  a.lazy = [](const State* w) { return std::max({w[0], w[1], w[2]}); };
  return finalize(std::move(a));
}

std::pair<Automaton, Automaton> nontransitivity_gadget(int p) {
  if (p < 5 || !is_prime(p))
    throw DomainError("gadget needs a prime state count >= 5");
  Automaton a;
  a.n = p;
  a.r = 1;
  a.label = "gadget(" + std::to_string(p) + ")";
  a.table.reserve(static_cast<std::size_t>(p) * p * p);
  for (int x = 0; x < p; ++x) {
    for (int y = 0; y < p; ++y)
      for (int z = 0; z < p; ++z) {
        State out;
        if (y != 0 && (z == 1 || z == 2))
          out = static_cast<State>(3 - z);
        else if (y != 0 && (z == 3 || z == 4))
          out = static_cast<State>(7 - z);
        else
          out = static_cast<State>((z + 1) % p);
        a.table.push_back(out);
      }
  }
  return {std::move(a), identity_automaton(2)};
}

std::pair<Automaton, Automaton> parity_range_pair() {
  Automaton big;
  big.n = 3;
  big.r = 2;
  big.label = "parity_big";
  big.table.reserve(243);
  const auto pi = [](int v) { return v == 0 ? 0 : 1; };
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z)
        for (int t = 0; t < 3; ++t)
          for (int u = 0; u < 3; ++u) {
            const int px = pi(x), py = pi(y), pz = pi(z), pt = pi(t),
                      pu = pi(u);
            State out;
            if (px == 0 && py == 1 && pz == 1 && pt == 1 && pu == 0)
              out = 1;
            else if (py == 0 && pz == 1 && pt == 1 && pu == 0)
              out = 2;
            else if (py == 1 && pz == 1 && pt == 1)
              out = static_cast<State>(z);
            else if (py == 0 && pz == 1 && pt == 0)
              out = static_cast<State>(z);
            else
              out = 0;
            big.table.push_back(out);
          }
  Automaton small;
  small.n = 2;
  small.r = 2;
  small.label = "parity_small";
  small.table.reserve(32);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int t = 0; t < 2; ++t)
          for (int u = 0; u < 2; ++u) {
            const bool one = (y == 1 && z == 1 && t == 1) ||
                             (y == 0 && z == 1 && t == 0) ||
                             (y == 0 && z == 1 && t == 1 && u == 0);
            small.table.push_back(one ? 1 : 0);
          }
  }
  return {std::move(big), std::move(small)};
}

namespace {

void validate_tm(const TuringMachine& tm) {
  if (tm.symbols < 1 || tm.states < 1)
    throw DomainError("machine needs at least one symbol and one state");
  if (tm.delta.size() !=
      static_cast<std::size_t>(tm.symbols) * static_cast<std::size_t>(tm.states))
    throw DomainError("transition table size mismatch");
  for (const auto& st : tm.delta)
    if (st.state < 0 || st.state >= tm.states || st.write < 0 ||
        st.write >= tm.symbols || st.move < -1 || st.move > 1)
      throw DomainError("transition entry out of range");
}

struct TmCell {
  enum Kind { kArrow, kHead, kKappa } kind = kKappa;
  int symbol = 0;
  int dir = 0;
  int q = 0;
};

TmCell classify(const TmCellCoding& cd, State s) {
  TmCell c;
  int v = static_cast<int>(s);
  if (v < 2 * cd.symbols) {
    c.kind = TmCell::kArrow;
    c.symbol = v / 2;
    c.dir = (v & 1) ? 1 : -1;
  } else if (v < 2 * cd.symbols + cd.symbols * cd.states) {
    v -= 2 * cd.symbols;
    c.kind = TmCell::kHead;
    c.symbol = v / cd.states;
    c.q = v % cd.states;
  }
  return c;
}

// A left arrow may only sit right of the head; a right arrow only left
// of it; heads are never adjacent. Violations feed the junk state.
bool inconsistent_pair(const TmCell& p, const TmCell& q) {
  const bool p_left = p.kind == TmCell::kArrow && p.dir < 0;
  const bool q_right = q.kind == TmCell::kArrow && q.dir > 0;
  if (p_left && (q.kind == TmCell::kHead || q_right)) return true;
  if (q_right && p.kind == TmCell::kHead) return true;
  if (p.kind == TmCell::kHead && q.kind == TmCell::kHead) return true;
  return false;
}

}  // namespace

TmCellCoding tm_cell_coding(const TuringMachine& tm) {
  validate_tm(tm);
  TmCellCoding cd;
  cd.symbols = tm.symbols;
  cd.states = tm.states;
  return cd;
}

Automaton tm_embed(const TuringMachine& tm) {
  const TmCellCoding cd = tm_cell_coding(tm);
  Automaton a;
  a.n = cd.total();
  a.r = 1;
  a.label = "tm_embed(" + std::to_string(tm.symbols) + "s" +
            std::to_string(tm.states) + "q)";
  const TuringMachine m = tm;
  a.lazy = [cd, m](const State* w) -> State {
    const State kap = cd.kappa();
    if (w[0] == kap || w[1] == kap || w[2] == kap) return kap;
    const TmCell l = classify(cd, w[0]);
    const TmCell c = classify(cd, w[1]);
    const TmCell rr = classify(cd, w[2]);
    if (inconsistent_pair(l, c) || inconsistent_pair(c, rr)) return kap;
    if (c.kind == TmCell::kHead) {
      const auto& st = m.at(c.q, c.symbol);
      if (st.move > 0) return cd.arrow(st.write, +1);
      if (st.move < 0) return cd.arrow(st.write, -1);
      return cd.head(st.write, st.state);
    }
    if (l.kind == TmCell::kHead) {
      const auto& st = m.at(l.q, l.symbol);
      if (st.move > 0) return cd.head(c.symbol, st.state);
    }
    if (rr.kind == TmCell::kHead) {
      const auto& st = m.at(rr.q, rr.symbol);
      if (st.move < 0) return cd.head(c.symbol, st.state);
    }
    return w[1];
  };
  return finalize(std::move(a));
}

PeriodicConfig tm_encode(const TuringMachine& tm, const std::vector<int>& tape,
                         int head_pos, int q) {
  const TmCellCoding cd = tm_cell_coding(tm);
  const int L = static_cast<int>(tape.size());
  if (L == 0) throw DomainError("tape must be non-empty");
  if (head_pos < 0 || head_pos >= L)
    throw DomainError("head position outside the tape");
  if (q < 0 || q >= tm.states)
    throw DomainError("control state out of range");
  PeriodicConfig c;
  c.n = cd.total();
  c.word.resize(L);
  for (int i = 0; i < L; ++i) {
    if (tape[i] < 0 || tape[i] >= tm.symbols)
      throw DomainError("tape symbol out of range");
    if (i < head_pos)
      c.word[i] = cd.arrow(tape[i], +1);
    else if (i == head_pos)
      c.word[i] = cd.head(tape[i], q);
    else
      c.word[i] = cd.arrow(tape[i], -1);
  }
  return c;
}

std::optional<TmView> tm_decode(const TuringMachine& tm,
                                const PeriodicConfig& c, int lo, int hi) {
  const TmCellCoding cd = tm_cell_coding(tm);
  if (c.n != cd.total())
    throw DomainError("configuration alphabet does not match the embedding");
  if (lo > hi) throw DomainError("decode range is empty");
  TmView v;
  v.tape.resize(hi - lo + 1);
  int heads = 0;
  for (int z = lo; z <= hi; ++z) {
    const TmCell cell = classify(cd, c.at(z));
    if (cell.kind == TmCell::kKappa) return std::nullopt;
    v.tape[z - lo] = cell.symbol;
    if (cell.kind == TmCell::kHead) {
      ++heads;
      v.head_pos = z;
      v.q = cell.q;
    }
  }
  if (heads != 1) return std::nullopt;
  return v;
}

TmTrace tm_run(const TuringMachine& tm, const std::vector<int>& tape,
               int head_pos, int q, int steps) {
  validate_tm(tm);
  if (tape.empty()) throw DomainError("tape must be non-empty");
  if (head_pos < 0 || head_pos >= static_cast<int>(tape.size()))
    throw DomainError("head position outside the tape");
  if (q < 0 || q >= tm.states)
    throw DomainError("control state out of range");
  if (steps < 0) throw DomainError("step count must be non-negative");
  for (int s : tape)
    if (s < 0 || s >= tm.symbols)
      throw DomainError("tape symbol out of range");
  TmTrace tr;
  tr.tape = tape;
  tr.offset_lo = 0;
  tr.head_pos = head_pos;
  tr.q = q;
  for (int s = 0; s < steps; ++s) {
    const std::size_t idx =
        static_cast<std::size_t>(tr.head_pos - tr.offset_lo);
    const auto& st = tm.at(tr.q, tr.tape[idx]);
    tr.tape[idx] = st.write;
    tr.q = st.state;
    tr.head_pos += st.move;
    if (tr.head_pos < tr.offset_lo) {
      tr.tape.insert(tr.tape.begin(), 0);
      --tr.offset_lo;
    } else if (tr.head_pos - tr.offset_lo >=
               static_cast<long long>(tr.tape.size())) {
      tr.tape.push_back(0);
    }
  }
  return tr;
}

TuringMachine unary_increment_machine() {
  TuringMachine tm;
  tm.symbols = 3;  // 0 blank, 1 mark, 2 separator
  tm.states = 2;   // 0 scans right, 1 drifts left
  tm.delta.resize(6);
  tm.delta[0 * 3 + 0] = {1, 1, 0};   // blank: write the new mark, settle
  tm.delta[0 * 3 + 1] = {0, 1, 1};   // mark: keep walking right
  tm.delta[0 * 3 + 2] = {0, 2, 1};   // separator: step over it
  tm.delta[1 * 3 + 0] = {1, 0, -1};
  tm.delta[1 * 3 + 1] = {1, 1, -1};
  tm.delta[1 * 3 + 2] = {1, 2, -1};
  return tm;
}

int two_state_block_width(int n) {
  if (n < 1) throw DomainError("state count must be >= 1");
  // F[k] = number of 11-free binary words of length k.
  std::vector<std::uint64_t> F{1, 2};
  while (F.back() < static_cast<std::uint64_t>(n))
    F.push_back(F[F.size() - 1] + F[F.size() - 2]);
  int k = 0;
  while (F[k] < static_cast<std::uint64_t>(n)) ++k;
  return k + 1;
}

std::vector<std::vector<State>> two_state_psi(int n) {
  const int m = two_state_block_width(n);
  std::vector<std::vector<State>> out;
  out.reserve(n);
  std::vector<State> word(m, 0);
  const auto rec = [&](auto&& self, int i) -> void {
    if (static_cast<int>(out.size()) >= n) return;
    if (i == m) {
      out.push_back(word);
      return;
    }
    word[i] = 0;
    self(self, i + 1);
    if (static_cast<int>(out.size()) >= n) return;
    if (word[i - 1] == 0) {
      word[i] = 1;
      self(self, i + 1);
      word[i] = 0;
    }
  };
  rec(rec, 1);
  return out;
}

Automaton encode_two_state(const Automaton& a) {
  const int n = a.n, r = a.r;
  const int m = two_state_block_width(n);
  const int L = m + 4;
  const auto psi = two_state_psi(n);
  std::vector<std::uint64_t> code(n);
  auto dec = std::make_shared<std::unordered_map<std::uint64_t, State>>();
  for (int s = 0; s < n; ++s) {
    std::uint64_t c = 0;
    for (State b : {0u, 1u, 1u, 0u}) c = (c << 1) | b;
    for (State b : psi[s]) c = (c << 1) | b;
    code[s] = c;
    (*dec)[c] = static_cast<State>(s);
  }
  Automaton e;
  e.n = 2;
  e.r = (r + 1) * L;
  e.label = "encode2(" + a.label + ")";
  e.encode_meta =
      std::make_shared<const EncodeMeta>(EncodeMeta{EncodeKind::TwoState, a});
  const int rp = e.r;
  const Automaton base = a;
  e.lazy = [base, dec, code, rp, r, L](const State* w) -> State {
    // Adjacent 1s occur only inside block markers; their positions must
    // agree on a single phase mod L.
    int rho = -1;
    for (int j = 0; j < 2 * rp; ++j) {
      if (w[j] == 1 && w[j + 1] == 1) {
        const int q = j % L;
        if (rho < 0)
          rho = q;
        else if (rho != q)
          return 1;
      }
    }
    if (rho < 0) return 1;
    const int srho = (rho - 1 + L) % L;
    const int s0 = rp - (((rp - srho) % L) + L) % L;
    std::vector<State> xs(2 * r + 1);
    for (int k = -r; k <= r; ++k) {
      const int start = s0 + k * L;
      std::uint64_t c = 0;
      for (int i = 0; i < L; ++i) c = (c << 1) | w[start + i];
      const auto it = dec->find(c);
      if (it == dec->end()) return 1;
      xs[k + r] = it->second;
    }
    const State y = base.eval(xs.data());
    const int phi = rp - s0;
    return static_cast<State>((code[y] >> (L - 1 - phi)) & 1u);
  };
  return finalize(std::move(e));
}

int captive_block_len(int n) {
  if (n < 1) throw DomainError("state count must be >= 1");
  return n + 3;
}

Automaton encode_captive(const Automaton& a) {
  const int n = a.n, r = a.r;
  const int L = captive_block_len(n);
  Automaton e;
  e.n = n + 1;
  e.r = (r + 1) * L;
  e.label = "encodecaptive(" + a.label + ")";
  e.encode_meta =
      std::make_shared<const EncodeMeta>(EncodeMeta{EncodeKind::Captive, a});
  const int rp = e.r;
  const State hash = static_cast<State>(n);
  const Automaton base = a;
  e.lazy = [base, rp, r, L, n, hash](const State* w) -> State {
    std::vector<State> xs(2 * r + 1);
    for (int s0 = rp - L + 1; s0 <= rp; ++s0) {
      bool ok = true;
      for (int k = -r; k <= r && ok; ++k) {
        const int start = s0 + k * L;
        if (w[start] != hash || w[start + n + 1] != hash) {
          ok = false;
          break;
        }
        for (int i = 0; i < n; ++i)
          if (w[start + 1 + i] != static_cast<State>(i)) {
            ok = false;
            break;
          }
        if (!ok) break;
        const State x = w[start + n + 2];
        if (x >= static_cast<State>(n)) {
          ok = false;
          break;
        }
        xs[k + r] = x;
      }
      if (!ok) continue;
      const State y = base.eval(xs.data());
      const int phi = rp - s0;
      if (phi == 0 || phi == n + 1) return hash;
      if (phi <= n) return static_cast<State>(phi - 1);
      return y;
    }
    // No block structure: emit the window maximum, which keeps the rule
    // captive with the marker as top element.
    State mx = 0;
    for (int i = 0; i <= 2 * rp; ++i) mx = std::max(mx, w[i]);
    return mx;
  };
  return finalize(std::move(e));
}

Automaton encode_equipt(const Automaton& a) {
  const Automaton base = canonicalize_radius(a, std::max(a.r, 1));
  Automaton e;
  e.n = a.n + 1;
  e.r = base.r;
  e.label = "encodeequipt(" + a.label + ")";
  e.encode_meta =
      std::make_shared<const EncodeMeta>(EncodeMeta{EncodeKind::Equipt, a});
  const State kap = static_cast<State>(a.n);
  const int len = 2 * e.r + 1;
  e.lazy = [base, kap, len](const State* w) -> State {
    for (int i = 0; i < len; ++i)
      if (w[i] == kap) return kap;
    return base.eval(w);
  };
  return finalize(std::move(e));
}

Automaton encode_sensi(const Automaton& a) {
  Automaton e = product(product(a, shift(2, 1)), shift(2, -1));
  e.label = "encodesensi(" + a.label + ")";
  e.encode_meta =
      std::make_shared<const EncodeMeta>(EncodeMeta{EncodeKind::Sensi, a});
  return e;
}

}  // namespace bulkca
