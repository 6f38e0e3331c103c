#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bulkca/automaton.hpp"
#include "bulkca/caformat.hpp"
#include "bulkca/diagram.hpp"
#include "bulkca/morphism.hpp"
#include "bulkca/property.hpp"
#include "bulkca/simsearch.hpp"
#include "bulkca/transform.hpp"
#include "bulkca/zoo.hpp"

namespace {

// One report line; porcelain is key=value, human gets key: value.
struct Emit {
  bool porcelain = false;

  void kv(const std::string& key, const std::string& value) const {
    std::cout << key << (porcelain ? "=" : ": ") << value << '\n';
  }
  void kv(const std::string& key, const char* value) const {
    kv(key, std::string(value));
  }
  void kv(const std::string& key, int value) const {
    kv(key, std::to_string(value));
  }
  void kv(const std::string& key, std::uint64_t value) const {
    kv(key, std::to_string(value));
  }
  void flag(const std::string& key, bool value) const {
    kv(key, value ? "yes" : "no");
  }
};

std::string join_states(const std::vector<bulkca::State>& v) {
  if (v.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  if (v.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string map_images(const bulkca::StateMap& m) {
  std::string out;
  for (std::size_t i = 0; i < m.table.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(m.table[i]);
  }
  return out;
}

bulkca::Automaton load_ca(const std::string& path) {
  try {
    return bulkca::parse_ca_file(path);
  } catch (const bulkca::ParseError& e) {
    throw bulkca::ParseError(path + ": " + e.what());
  }
}

long long token_int(const std::string& tok, long long lo, long long hi,
                    const std::string& what) {
  long long v = 0;
  const auto [p, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || v < lo || v > hi)
    throw bulkca::DomainError(what + ": expected an integer in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "], got '" + tok + "'");
  return v;
}

bulkca::ShiftProduct::Factor parse_factor(const std::string& tok,
                                          long long min_states) {
  const auto colon = tok.find(':');
  if (colon == std::string::npos)
    throw bulkca::DomainError("factor '" + tok + "' is not of the form n:z");
  bulkca::ShiftProduct::Factor f;
  f.states = static_cast<int>(
      token_int(tok.substr(0, colon), min_states, 1 << 24, "factor states"));
  f.vector = token_int(tok.substr(colon + 1), -(1ll << 20), 1ll << 20,
                       "factor vector");
  return f;
}

std::vector<bulkca::State> parse_subset(const std::string& text, int limit) {
  std::istringstream in(text);
  std::vector<bulkca::State> out;
  std::string tok;
  while (in >> tok)
    out.push_back(static_cast<bulkca::State>(
        token_int(tok, 0, limit - 1, "subset state")));
  if (out.empty()) throw bulkca::DomainError("subset is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bulkca::Automaton build_named(const std::string& name,
                              const std::vector<std::string>& p) {
  auto want = [&](std::size_t k, const std::string& usage) {
    if (p.size() != k)
      throw bulkca::DomainError("usage: bulkca make " + usage);
  };
  auto arg = [&](std::size_t i, long long lo, long long hi,
                 const char* what) { return token_int(p[i], lo, hi, what); };

  if (name == "additive") {
    want(1, "additive <p>");
    return bulkca::additive(static_cast<int>(arg(0, 2, 1 << 24, "modulus")));
  }
  if (name == "shift") {
    want(1, "shift <n:z>");
    const auto f = parse_factor(p[0], 1);
    return bulkca::shift(f.states, f.vector);
  }
  if (name == "identity") {
    want(1, "identity <n>");
    return bulkca::identity_automaton(
        static_cast<int>(arg(0, 1, 1 << 24, "state count")));
  }
  if (name == "shiftprod") {
    if (p.empty())
      throw bulkca::DomainError(
          "usage: bulkca make shiftprod <n:z> [<n:z> ...]");
    bulkca::ShiftProduct sp;
    for (const auto& tok : p) sp.factors.push_back(parse_factor(tok, 2));
    return bulkca::shift_product(sp);
  }
  if (name == "deltamax") {
    want(1, "deltamax <n>");
    return bulkca::delta_max(static_cast<int>(arg(0, 1, 256, "state count")));
  }
  if (name == "gadget") {
    want(1, "gadget <p>");
    return bulkca::nontransitivity_gadget(
               static_cast<int>(arg(0, 5, 9973, "prime")))
        .first;
  }
  if (name == "parity-big") {
    want(0, "parity-big");
    return bulkca::parity_range_pair().first;
  }
  if (name == "parity-small") {
    want(0, "parity-small");
    return bulkca::parity_range_pair().second;
  }
  if (name == "tm-incr") {
    want(0, "tm-incr");
    return bulkca::tm_embed(bulkca::unary_increment_machine());
  }
  if (name == "encode2" || name == "encodecaptive" ||
      name == "encodeequipt" || name == "encodesensi") {
    want(1, name + " <base.ca>");
    const bulkca::Automaton base = load_ca(p[0]);
    if (name == "encode2") return bulkca::encode_two_state(base);
    if (name == "encodecaptive") return bulkca::encode_captive(base);
    if (name == "encodeequipt") return bulkca::encode_equipt(base);
    return bulkca::encode_sensi(base);
  }
  throw bulkca::DomainError(
      "unknown make target '" + name +
      "'; targets: additive shift identity shiftprod deltamax gadget "
      "parity-big parity-small tm-incr encode2 encodecaptive encodeequipt "
      "encodesensi");
}

std::string kind_of(const bulkca::Automaton& a) {
  if (a.additive_meta) return "additive " + std::to_string(*a.additive_meta);
  if (a.encode_meta) {
    const char* name = "?";
    switch (a.encode_meta->kind) {
      case bulkca::EncodeKind::TwoState:
        name = "two-state";
        break;
      case bulkca::EncodeKind::Captive:
        name = "captive";
        break;
      case bulkca::EncodeKind::Equipt:
        name = "equipt";
        break;
      case bulkca::EncodeKind::Sensi:
        name = "sensi";
        break;
    }
    const bulkca::Automaton& base = a.encode_meta->base;
    std::string out = std::string("encode ") + name + " of ";
    out += base.label.empty() ? std::to_string(base.n) + "-state radius-" +
                                    std::to_string(base.r) + " rule"
                              : base.label;
    return out;
  }
  if (a.shift_meta) {
    std::string out = "shift product";
    for (const auto& f : a.shift_meta->factors)
      out += " " + std::to_string(f.states) + ":" + std::to_string(f.vector);
    return out;
  }
  if (a.product_meta) return "product";
  return a.materialized() ? "table" : "lazy rule";
}

struct MakeOpts {
  std::string name;
  std::vector<std::string> params;
  std::string out;
};

int cmd_make(const MakeOpts& o, const Emit& em) {
  const bulkca::Automaton a = build_named(o.name, o.params);
  if (o.out.empty()) {
    bulkca::write_ca(a, std::cout);
  } else {
    bulkca::write_ca_file(a, o.out);
    em.kv("path", o.out);
    em.kv("states", a.n);
    em.kv("radius", a.r);
  }
  return 0;
}

struct RunOpts {
  std::string path;
  std::string config;
  std::string pgm;
  int steps = 8;
  int replicate = 1;
  bool time_up = false;
};

int cmd_run(const RunOpts& o, const Emit& em) {
  const bulkca::Automaton a = load_ca(o.path);
  const bulkca::PeriodicConfig c = bulkca::parse_config(o.config, a.n);
  const bulkca::Diagram d = bulkca::run_diagram(a, c, o.steps, o.replicate);
  if (!o.pgm.empty()) {
    const std::string bytes = bulkca::render_pgm(d, o.time_up);
    std::ofstream out(o.pgm, std::ios::binary);
    if (!out)
      throw bulkca::ParseError("cannot open '" + o.pgm + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw bulkca::ParseError("failed writing '" + o.pgm + "'");
    em.kv("path", o.pgm);
    em.kv("width", d.width);
    em.kv("height", d.height);
  } else {
    std::cout << bulkca::render_ascii(d, o.time_up);
  }
  return 0;
}

struct PropsOpts {
  std::string path;
  int max_period = 4;
  int max_transient = 16;
  int inverse_rmax = -1;
};

int cmd_props(const PropsOpts& o, const Emit& em) {
  const bulkca::Automaton a = load_ca(o.path);

  try {
    em.flag("balanced", bulkca::is_balanced(a));
  } catch (const bulkca::InfeasibleError&) {
    em.kv("balanced", "infeasible");
  }

  const bulkca::Verdict surj = bulkca::is_surjective(a);
  em.kv("surjective", bulkca::to_string(surj.status));
  if (surj.orphan) em.kv("orphan", join_states(*surj.orphan));
  if (!surj.note.empty()) em.kv("surjective_note", surj.note);

  const bulkca::Verdict inj = bulkca::is_injective(a);
  em.kv("injective", bulkca::to_string(inj.status));
  if (inj.collision) {
    em.kv("collision_a", bulkca::format_config(inj.collision->first));
    em.kv("collision_b", bulkca::format_config(inj.collision->second));
  }
  if (!inj.note.empty()) em.kv("injective_note", inj.note);

  if (inj.status == bulkca::Status::Holds) {
    const int rmax = o.inverse_rmax >= 0 ? o.inverse_rmax : 2 * a.r + 1;
    try {
      const auto inv = bulkca::inverse(a, rmax);
      if (inv)
        em.kv("inverse_radius", inv->r);
      else
        em.kv("inverse_radius", "none up to " + std::to_string(rmax));
    } catch (const bulkca::InfeasibleError&) {
      em.kv("inverse_radius", "infeasible");
    }
  }

  const std::optional<bool> lr = bulkca::try_lr_permutative(a);
  em.kv("lr_permutative", lr ? (*lr ? "yes" : "no") : "unknown");

  em.kv("quiescent", join_states(bulkca::quiescent_states(a)));

  try {
    em.kv("spreading", join_states(bulkca::spreading_states(a)));
  } catch (const bulkca::InfeasibleError&) {
    em.kv("spreading", "infeasible");
  }

  bulkca::CaptiveReport crep;
  const bool cap = bulkca::is_captive(a, &crep);
  em.flag("captive", cap);
  em.flag("captive_exhaustive", crep.exhaustive);

  if (bulkca::checked_pow(static_cast<std::uint64_t>(a.n),
                          static_cast<unsigned>(o.max_period)) >
      (1ull << 20)) {
    em.kv("nilpotent", "infeasible");
  } else {
    const bulkca::Verdict nil =
        bulkca::nilpotent_over_periodic(a, o.max_period, o.max_transient);
    em.kv("nilpotent", bulkca::to_string(nil.status));
    if (!nil.note.empty()) em.kv("nilpotent_note", nil.note);
  }
  return 0;
}

struct CheckOpts {
  std::string kind;
  std::string a_path;
  std::string b_path;
  std::string map_text;
  std::string subset_text;
  std::string alpha_text;
  int group = 1;
  std::uint64_t samples = 0;
  std::uint64_t budget = 0;
};

int cmd_check(const CheckOpts& o, const Emit& em) {
  const bulkca::Automaton a = load_ca(o.a_path);
  const bulkca::Automaton b = load_ca(o.b_path);
  const bulkca::Transform alpha = o.alpha_text.empty()
                                      ? bulkca::identity_transform()
                                      : bulkca::parse_transform(o.alpha_text);
  const bulkca::Automaton ap = alpha == bulkca::identity_transform()
                                   ? a
                                   : bulkca::apply_transform(a, alpha);
  const bulkca::Automaton bp =
      o.group == 1 ? b : bulkca::grouping(b, o.group);
  em.kv("alpha", bulkca::format_transform(alpha));
  em.kv("group", o.group);

  bulkca::CheckOptions copts;
  if (o.samples) copts.samples = o.samples;
  bulkca::FindLimits limits;
  if (o.budget) limits.eval_budget = o.budget;

  if (!o.map_text.empty()) {
    bulkca::CheckReport rep;
    std::vector<bulkca::State> subset;
    bool ok = false;
    if (o.kind == "sub") {
      const bulkca::StateMap iota = bulkca::parse_map(
          o.map_text, ap.n, bp.n, bulkca::MapRole::Injection);
      ok = bulkca::check_subautomaton(ap, bp, iota, copts, &rep);
    } else if (o.kind == "quot") {
      const bulkca::StateMap pi = bulkca::parse_map(
          o.map_text, bp.n, ap.n, bulkca::MapRole::Surjection);
      ok = bulkca::check_quotient(ap, bp, pi, copts, &rep);
    } else {
      if (o.subset_text.empty())
        throw bulkca::DomainError(
            "mixed check with an explicit map needs --subset");
      subset = parse_subset(o.subset_text, bp.n);
      const bulkca::Automaton br = bulkca::restrict_to(bp, subset);
      const bulkca::StateMap pi =
          bulkca::parse_map(o.map_text, static_cast<int>(subset.size()),
                            ap.n, bulkca::MapRole::Surjection);
      ok = bulkca::check_quotient(ap, br, pi, copts, &rep);
    }
    em.kv("result", ok ? "holds" : "fails");
    if (!subset.empty()) em.kv("subset", join_states(subset));
    em.flag("exhaustive", rep.exhaustive);
    em.kv("windows", rep.windows);
    if (!ok && !rep.counterexample.empty())
      em.kv("counterexample", join_states(rep.counterexample));
    return ok ? 0 : 2;
  }

  if (o.kind == "mixed" && o.subset_text.empty()) {
    const bulkca::MixedResult res = bulkca::find_mixed(ap, bp, limits);
    if (res.witness) {
      em.kv("result", "holds");
      em.kv("subset", join_states(res.witness->subset));
      em.kv("map", map_images(res.witness->pi));
    } else {
      em.kv("result", res.exhaustive ? "none" : "unknown");
    }
    em.flag("exhaustive", res.exhaustive);
    em.kv("evaluations", res.evaluations);
    return res.witness ? 0 : 2;
  }

  bulkca::FindResult res;
  std::vector<bulkca::State> subset;
  if (o.kind == "sub") {
    res = bulkca::find_subautomaton(ap, bp, limits);
  } else if (o.kind == "quot") {
    res = bulkca::find_quotient(ap, bp, limits);
  } else {
    subset = parse_subset(o.subset_text, bp.n);
    res = bulkca::find_quotient(ap, bulkca::restrict_to(bp, subset), limits);
  }
  if (res.map) {
    em.kv("result", "holds");
    if (!subset.empty()) em.kv("subset", join_states(subset));
    em.kv("map", map_images(*res.map));
  } else {
    em.kv("result", res.exhaustive ? "none" : "unknown");
    if (!subset.empty()) em.kv("subset", join_states(subset));
  }
  em.flag("exhaustive", res.exhaustive);
  em.kv("evaluations", res.evaluations);
  return res.map ? 0 : 2;
}

struct SearchOpts {
  std::string rel;
  std::string a_path;
  std::string b_path;
  bulkca::SearchBounds bounds;
  bool strong = false;
  int jobs = 1;
};

int cmd_search(const SearchOpts& o, const Emit& em) {
  const bulkca::Automaton a = load_ca(o.a_path);
  const bulkca::Automaton b = load_ca(o.b_path);
  const bulkca::Relation rel =
      o.rel == "inj"
          ? bulkca::Relation::Injective
          : (o.rel == "surj" ? bulkca::Relation::Surjective
                             : bulkca::Relation::Mixed);
  const bulkca::SearchOutcome out =
      o.strong ? bulkca::search_strong(rel, a, b, o.bounds, o.jobs)
               : bulkca::search(rel, a, b, o.bounds, o.jobs);
  em.kv("result", bulkca::to_string(out.status));
  if (out.witness) {
    em.kv("witness", out.witness->format());
    em.kv("alpha", bulkca::format_transform(out.witness->alpha));
    em.kv("group", out.witness->group_t);
    if (!out.witness->subset.empty())
      em.kv("subset", join_states(out.witness->subset));
    em.kv("map", map_images(out.witness->map));
  }
  const bulkca::SearchStats& st = out.stats;
  em.kv("cells_total", st.cells_total);
  em.kv("cells_searched", st.cells_searched);
  em.kv("cells_pruned_state_count", st.cells_pruned_state_count);
  em.kv("cells_pruned_divisibility", st.cells_pruned_divisibility);
  em.kv("cells_pruned_quiescence", st.cells_pruned_quiescence);
  em.kv("cells_skipped_cutoff", st.cells_skipped_cutoff);
  em.kv("cells_skipped_guard", st.cells_skipped_guard);
  em.kv("subsets_pruned_divisibility", st.subsets_pruned_divisibility);
  em.kv("budget_aborts", st.budget_aborts);
  em.kv("evaluations", st.evaluations);
  for (const auto& note : out.notes) em.kv("note", note);
  return out.status == bulkca::Status::Holds ? 0 : 2;
}

struct TransformOpts {
  std::string path;
  std::string alpha_text;
  std::string out;
};

int cmd_transform(const TransformOpts& o, const Emit& em) {
  const bulkca::Automaton a = load_ca(o.path);
  const bulkca::Transform t = bulkca::parse_transform(o.alpha_text);
  const bulkca::Automaton b = bulkca::apply_transform(a, t);
  if (o.out.empty()) {
    bulkca::write_ca(b, std::cout);
  } else {
    bulkca::write_ca_file(b, o.out);
    em.kv("path", o.out);
    em.kv("states", b.n);
    em.kv("radius", b.r);
  }
  return 0;
}

struct InfoOpts {
  std::string path;
  std::uint64_t nbhd_samples = 4096;
};

int cmd_info(const InfoOpts& o, const Emit& em) {
  const bulkca::Automaton a = load_ca(o.path);
  em.kv("label", a.label.empty() ? "-" : a.label);
  em.kv("states", a.n);
  em.kv("radius", a.r);
  em.kv("window", a.window_len());
  em.kv("table_entries", a.table_size());
  em.flag("materialized", a.materialized());
  em.kv("kind", kind_of(a));
  bulkca::NeighborhoodOptions nopts;
  nopts.allow_sampling = true;
  nopts.samples = o.nbhd_samples;
  bulkca::NeighborhoodReport nrep;
  const std::vector<int> nb = bulkca::minimal_neighborhood(a, nopts, &nrep);
  em.kv("neighborhood", join_ints(nb));
  em.flag("neighborhood_exhaustive", nrep.exhaustive);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-dimensional cellular automata: rescaling transforms, "
               "simulation relations, and decidable property analyzers"};
  app.require_subcommand(1);
  Emit em;
  app.add_flag("--porcelain", em.porcelain, "key=value output for scripts");
  int rc = 0;

  MakeOpts mo;
  auto* mk = app.add_subcommand(
      "make", "construct a named automaton and write it as a .ca file");
  mk->fallthrough();
  mk->add_option("name", mo.name,
                 "target: additive shift identity shiftprod deltamax gadget "
                 "parity-big parity-small tm-incr encode2 encodecaptive "
                 "encodeequipt encodesensi")
      ->required();
  mk->add_option("params", mo.params,
                 "target parameters: integers, n:z factors, or a base .ca "
                 "path");
  mk->add_option("-o,--output", mo.out, "output path (stdout when absent)");
  mk->callback([&] { rc = cmd_make(mo, em); });

  RunOpts ro;
  auto* rn = app.add_subcommand("run", "render a space-time diagram");
  rn->fallthrough();
  rn->add_option("file", ro.path, "automaton .ca file")->required();
  rn->add_option("-c,--config", ro.config,
                 "periodic configuration \"L : s0 s1 ...\"")
      ->required();
  rn->add_option("-s,--steps", ro.steps, "time steps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rn->add_option("-x,--replicate", ro.replicate, "horizontal period copies")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rn->add_option("--pgm", ro.pgm,
                 "write a binary PGM here instead of ASCII art");
  rn->add_flag("--time-up", ro.time_up, "render time flowing upward");
  rn->callback([&] { rc = cmd_run(ro, em); });

  PropsOpts po;
  auto* pr = app.add_subcommand("props", "run the property analyzers");
  pr->fallthrough();
  pr->add_option("file", po.path, "automaton .ca file")->required();
  pr->add_option("--max-period", po.max_period,
                 "nilpotency: spatial period bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pr->add_option("--max-transient", po.max_transient,
                 "nilpotency: settle steps per orbit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  pr->add_option("--inverse-rmax", po.inverse_rmax,
                 "inverse search radius bound (default 2r+1)");
  pr->callback([&] { rc = cmd_props(po, em); });

  CheckOpts co;
  auto* ck = app.add_subcommand(
      "check", "check or find one simulation ingredient at a fixed "
               "rescaling of a and grouping of b");
  ck->fallthrough();
  ck->add_option("kind", co.kind, "sub | quot | mixed")
      ->required()
      ->check(CLI::IsMember({"sub", "quot", "mixed"}));
  ck->add_option("a", co.a_path, "simulated automaton .ca")->required();
  ck->add_option("b", co.b_path, "simulating automaton .ca")->required();
  ck->add_option("--map", co.map_text,
                 "explicit state map images \"t0 t1 ...\" (sub: from a'; "
                 "quot: from b'; mixed: from the subset in ascending order)");
  ck->add_option("--subset", co.subset_text,
                 "stable subset of b' states \"s0 s1 ...\" (mixed)");
  ck->add_option("--alpha", co.alpha_text,
                 "rescaling of a as m:T:s, or ~m:T:s with mirror");
  ck->add_option("--group", co.group, "grouping of b")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ck->add_option("--samples", co.samples,
                 "sampled windows when the scan is not exhaustive");
  ck->add_option("--budget", co.budget, "evaluation budget for map search");
  ck->callback([&] { rc = cmd_check(co, em); });

  SearchOpts so;
  auto* se = app.add_subcommand(
      "search", "search rescalings and groupings for a simulation witness");
  se->fallthrough();
  se->add_option("rel", so.rel, "inj | surj | mixed")
      ->required()
      ->check(CLI::IsMember({"inj", "surj", "mixed"}));
  se->add_option("a", so.a_path, "simulated automaton .ca")->required();
  se->add_option("b", so.b_path, "simulating automaton .ca")->required();
  se->add_option("--max-m", so.bounds.max_m, "block size bound for a")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  se->add_option("--max-T", so.bounds.max_T, "step bound for a")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  se->add_option("--max-shift", so.bounds.max_shift, "shift bound for a")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  se->add_option("--max-group", so.bounds.max_group, "grouping bound for b")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  se->add_flag("--mirror", so.bounds.allow_mirror,
               "also try mirrored rescalings");
  se->add_flag("--strong", so.strong,
               "pin the rescaling of a to the trivial transform");
  se->add_option("--jobs", so.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  se->callback([&] { rc = cmd_search(so, em); });

  TransformOpts to;
  auto* tr = app.add_subcommand(
      "transform", "apply a space-time rescaling and write the result");
  tr->fallthrough();
  tr->add_option("file", to.path, "automaton .ca file")->required();
  tr->add_option("--alpha", to.alpha_text, "rescaling m:T:s or ~m:T:s")
      ->required();
  tr->add_option("-o,--output", to.out, "output path (stdout when absent)");
  tr->callback([&] { rc = cmd_transform(to, em); });

  InfoOpts io;
  auto* in_ = app.add_subcommand("info",
                                 "structural facts about an automaton");
  in_->fallthrough();
  in_->add_option("file", io.path, "automaton .ca file")->required();
  in_->add_option("--nbhd-samples", io.nbhd_samples,
                  "samples for the neighborhood scan on large rules")
      ->capture_default_str();
  in_->callback([&] { rc = cmd_info(io, em); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const bulkca::BulkcaError& e) {
    std::cerr << "bulkca: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "bulkca: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
