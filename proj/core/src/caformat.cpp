#include "bulkca/caformat.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bulkca/zoo.hpp"

namespace bulkca {

namespace {

long long parse_int(const std::string& tok, long long lo, long long hi,
                    const char* what) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(std::string(what) + ": not an integer: '" + tok + "'");
  if (v < lo || v > hi)
    throw ParseError(std::string(what) + ": " + tok + " out of range");
  return v;
}

struct Tokenizer {
  std::istream& in;
  int line = 1;

  // Next token, skipping blank space and # comments; empty at the end.
  std::string next() {
    for (;;) {
      int c = in.get();
      if (c == std::char_traits<char>::eof()) return {};
      if (c == '\n') {
        ++line;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '#') {
        while ((c = in.get()) != std::char_traits<char>::eof() && c != '\n') {
        }
        if (c == '\n') ++line;
        continue;
      }
      std::string tok(1, static_cast<char>(c));
      while ((c = in.peek()) != std::char_traits<char>::eof() &&
             !std::isspace(static_cast<unsigned char>(c)))
        tok += static_cast<char>(in.get());
      return tok;
    }
  }

  // Captures "# text" as a label when it is the next content; other
  // comments stay invisible to next().
  std::optional<std::string> label_line() {
    int c;
    for (;;) {
      c = in.peek();
      if (c == std::char_traits<char>::eof()) return std::nullopt;
      if (c == '\n') {
        in.get();
        ++line;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        in.get();
        continue;
      }
      break;
    }
    if (c != '#') return std::nullopt;
    in.get();
    std::string text;
    while ((c = in.get()) != std::char_traits<char>::eof() && c != '\n')
      text += static_cast<char>(c);
    if (c == '\n') ++line;
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return text.substr(b, e - b);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
  }

  std::string expect(const char* what) {
    std::string tok = next();
    if (tok.empty())
      fail(std::string("unexpected end of input, wanted ") + what);
    return tok;
  }

  void expect_keyword(const char* kw) {
    const std::string tok = expect(kw);
    if (tok != kw)
      fail(std::string("expected '") + kw + "', got '" + tok + "'");
  }

  long long integer(long long lo, long long hi, const char* what) {
    const std::string tok = expect(what);
    try {
      return parse_int(tok, lo, hi, what);
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }
};

EncodeKind encode_kind_of(const std::string& name) {
  if (name == "two-state") return EncodeKind::TwoState;
  if (name == "captive") return EncodeKind::Captive;
  if (name == "equipt") return EncodeKind::Equipt;
  if (name == "sensi") return EncodeKind::Sensi;
  throw ParseError("unknown encoding '" + name + "'");
}

const char* encode_kind_name(EncodeKind k) {
  switch (k) {
    case EncodeKind::TwoState:
      return "two-state";
    case EncodeKind::Captive:
      return "captive";
    case EncodeKind::Equipt:
      return "equipt";
    case EncodeKind::Sensi:
      return "sensi";
  }
  return "?";
}

Automaton apply_encoding(EncodeKind kind, const Automaton& base) {
  switch (kind) {
    case EncodeKind::TwoState:
      return encode_two_state(base);
    case EncodeKind::Captive:
      return encode_captive(base);
    case EncodeKind::Equipt:
      return encode_equipt(base);
    case EncodeKind::Sensi:
      return encode_sensi(base);
  }
  throw ParseError("unknown encoding kind");
}

Automaton parse_body(Tokenizer& tz) {
  tz.expect_keyword("states");
  const int n = static_cast<int>(tz.integer(1, 1 << 24, "state count"));
  tz.expect_keyword("radius");
  const int r = static_cast<int>(tz.integer(0, 1 << 20, "radius"));
  tz.expect_keyword("rule");
  const std::string kind = tz.expect("rule kind");
  if (kind == "table") {
    const std::uint64_t want =
        checked_pow(static_cast<std::uint64_t>(n),
                    static_cast<unsigned>(2 * r + 1));
    if (want > kMaterializeLimit)
      tz.fail("rule table would exceed the materialization limit (" +
              std::to_string(want) + " entries)");
    std::vector<State> table;
    table.reserve(want);
    for (std::uint64_t i = 0; i < want; ++i)
      table.push_back(static_cast<State>(tz.integer(0, n - 1, "table entry")));
    return make_table_automaton(n, r, std::move(table));
  }
  Automaton a;
  if (kind == "additive") {
    const int p = static_cast<int>(tz.integer(2, 1 << 24, "modulus"));
    a = additive(p);
  } else if (kind == "shiftprod") {
    const int k = static_cast<int>(tz.integer(1, 64, "factor count"));
    ShiftProduct sp;
    for (int i = 0; i < k; ++i) {
      ShiftProduct::Factor f;
      f.states = static_cast<int>(tz.integer(2, 1 << 24, "factor states"));
      f.vector = tz.integer(-(1ll << 20), 1ll << 20, "factor vector");
      sp.factors.push_back(f);
    }
    a = shift_product(sp);
  } else if (kind == "encode") {
    const EncodeKind ek = encode_kind_of(tz.expect("encoding name"));
    tz.expect_keyword("base");
    const Automaton base = parse_body(tz);
    a = apply_encoding(ek, base);
  } else {
    tz.fail("unknown rule kind '" + kind + "'");
  }
  if (a.n != n || a.r != r)
    tz.fail("header says " + std::to_string(n) + " states radius " +
            std::to_string(r) + " but the rule has " + std::to_string(a.n) +
            " states radius " + std::to_string(a.r));
  return a;
}

void write_body(const Automaton& a, std::ostream& out) {
  out << "states " << a.n << "\n";
  out << "radius " << a.r << "\n";
  if (a.additive_meta && a.n == *a.additive_meta && a.r == 1) {
    out << "rule additive " << *a.additive_meta << "\n";
    return;
  }
  if (a.encode_meta) {
    const EncodeMeta& em = *a.encode_meta;
    const Automaton probe = apply_encoding(em.kind, em.base);
    if (probe.n == a.n && probe.r == a.r) {
      out << "rule encode " << encode_kind_name(em.kind) << "\n";
      out << "base\n";
      write_body(em.base, out);
      return;
    }
  }
  if (a.shift_meta) {
    std::uint64_t states = 1;
    int rad = 0;
    for (const auto& f : a.shift_meta->factors) {
      states *= static_cast<std::uint64_t>(f.states);
      rad = std::max(rad, static_cast<int>(f.vector < 0 ? -f.vector
                                                        : f.vector));
    }
    if (states == static_cast<std::uint64_t>(a.n) && rad == a.r) {
      out << "rule shiftprod " << a.shift_meta->factors.size() << "\n";
      for (const auto& f : a.shift_meta->factors)
        out << f.states << " " << f.vector << "\n";
      return;
    }
  }
  if (a.table_size() > kMaterializeLimit)
    throw InfeasibleError(
        "automaton too large to serialize without structural metadata");
  const Automaton t = a.materialized() ? a : finalize(a);
  out << "rule table";
  for (std::uint64_t i = 0; i < t.table.size(); ++i) {
    out << (i % 20 == 0 ? "\n" : " ") << t.table[i];
  }
  out << "\n";
}

}  // namespace

Automaton parse_ca(std::istream& in) {
  Tokenizer tz{in};
  tz.expect_keyword("ca");
  tz.expect_keyword("v1");
  const std::optional<std::string> label = tz.label_line();
  Automaton a = parse_body(tz);
  a.label = label.value_or("");
  return a;
}

Automaton parse_ca_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_ca(in);
}

Automaton parse_ca_string(const std::string& text) {
  std::istringstream in(text);
  return parse_ca(in);
}

void write_ca(const Automaton& a, std::ostream& out) {
  out << "ca v1\n";
  if (!a.label.empty()) out << "# " << a.label << "\n";
  write_body(a, out);
}

void write_ca_file(const Automaton& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_ca(a, out);
  out.flush();
  if (!out) throw ParseError("failed writing '" + path + "'");
}

std::string write_ca_string(const Automaton& a) {
  std::ostringstream os;
  write_ca(a, os);
  return os.str();
}

PeriodicConfig parse_config(const std::string& text, int n) {
  std::istringstream in(text);
  Tokenizer tz{in};
  const int L = static_cast<int>(
      parse_int(tz.expect("period"), 1, 1 << 22, "period"));
  tz.expect_keyword(":");
  PeriodicConfig c;
  c.n = n;
  c.word.reserve(L);
  for (int i = 0; i < L; ++i)
    c.word.push_back(static_cast<State>(
        parse_int(tz.expect("cell state"), 0, n - 1, "cell state")));
  if (!tz.next().empty()) throw ParseError("trailing tokens after the word");
  return c;
}

std::string format_config(const PeriodicConfig& c) {
  std::string out = std::to_string(c.size()) + " :";
  for (State s : c.word) out += " " + std::to_string(s);
  return out;
}

Transform parse_transform(const std::string& text) {
  std::string body = text;
  Transform t;
  if (!body.empty() && body[0] == '~') {
    t.tau = -1;
    body.erase(0, 1);
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : body) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw ParseError("transform must look like m:T:s, got '" + text + "'");
  t.m = static_cast<int>(parse_int(parts[0], 1, 1 << 16, "block size"));
  t.T = static_cast<int>(parse_int(parts[1], 1, 1 << 16, "step count"));
  t.s = parse_int(parts[2], -(1ll << 20), 1ll << 20, "shift");
  return t;
}

std::string format_transform(const Transform& t) {
  std::string out = t.tau < 0 ? "~" : "";
  out += std::to_string(t.m) + ":" + std::to_string(t.T) + ":" +
         std::to_string(t.s);
  return out;
}

StateMap parse_map(const std::string& text, int source_count,
                   int target_count, MapRole role) {
  std::istringstream in(text);
  Tokenizer tz{in};
  StateMap m;
  m.source_count = source_count;
  m.target_count = target_count;
  m.role = role;
  m.table.reserve(source_count);
  for (int i = 0; i < source_count; ++i)
    m.table.push_back(static_cast<State>(parse_int(
        tz.expect("map entry"), 0, target_count - 1, "map entry")));
  if (!tz.next().empty()) throw ParseError("trailing tokens after the map");
  m.validate();
  return m;
}

}  // namespace bulkca
