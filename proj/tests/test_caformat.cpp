#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include <bulkca/automaton.hpp>
#include <bulkca/caformat.hpp>
#include <bulkca/transform.hpp>
#include <bulkca/zoo.hpp>

#include "oracles.hpp"

using namespace bulkca;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const BulkcaError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("table automata round trip through the text format") {
  Automaton a = oracle::random_automaton(3, 1, 7);
  a.label = "sample rule";
  const std::string text = write_ca_string(a);
  const Automaton b = parse_ca_string(text);
  CHECK(b.n == 3);
  CHECK(b.r == 1);
  CHECK(b.table == a.table);
  CHECK(b.label == "sample rule");
  CHECK(write_ca_string(b) == text);
}

TEST_CASE("structured rules serialize by their metadata") {
  const std::string add = write_ca_string(additive(5));
  CHECK(contains(add, "rule additive 5"));
  const Automaton a = parse_ca_string(add);
  REQUIRE(a.additive_meta);
  CHECK(*a.additive_meta == 5);

  const std::string sp = write_ca_string(shift(2, 13));
  CHECK(contains(sp, "rule shiftprod 1"));
  const Automaton s = parse_ca_string(sp);
  REQUIRE(s.shift_meta);
  CHECK(s.r == 13);
  const PeriodicConfig c{2, {1, 0, 0, 0}};
  CHECK(step(s, c) == shift_config(c, 13));

  const Automaton enc = encode_captive(additive(2));
  const std::string et = write_ca_string(enc);
  CHECK(contains(et, "rule encode captive"));
  CHECK(contains(et, "base"));
  const Automaton e = parse_ca_string(et);
  REQUIRE(e.encode_meta);
  CHECK(e.encode_meta->kind == EncodeKind::Captive);
  CHECK(e.n == enc.n);
  CHECK(e.r == enc.r);
  std::vector<State> w(static_cast<std::size_t>(e.window_len()), 0);
  int probes = 0;
  do {
    CHECK(e.eval(w.data()) == enc.eval(w.data()));
    w[static_cast<std::size_t>(probes % e.window_len())] =
        static_cast<State>((probes * 7 + 1) % 3);
  } while (++probes < 24);
}

TEST_CASE("products without a writable structure fall back to the table") {
  const Automaton p = product(additive(2), shift(2, 1));
  const std::string text = write_ca_string(p);
  CHECK(contains(text, "rule table"));
  const Automaton q = parse_ca_string(text);
  CHECK(q.n == 4);
  for (const auto& c : oracle::all_configs(4, 3))
    CHECK(step(q, c) == step(p, c));
}

TEST_CASE("oversized rules without metadata refuse to serialize") {
  Automaton big =
      canonicalize_radius(oracle::random_automaton(2, 1, 11), 14);
  CHECK_THROWS_AS(write_ca_string(big), InfeasibleError);
}

TEST_CASE("comments and blank lines are ignored between fields") {
  const Automaton a = parse_ca_string(
      "ca v1\n"
      "\n"
      "states 2\n"
      "# the radius comes next\n"
      "radius 0\n"
      "\n"
      "rule table 1 0\n");
  CHECK(a.n == 2);
  CHECK(a.r == 0);
  CHECK(a.table == std::vector<State>{1, 0});
}

TEST_CASE("parse errors carry the offending line") {
  const std::string truncated =
      "ca v1\nstates 2\nradius 1\nrule table\n0 1 0\n";
  const std::string e1 =
      error_of([&] { parse_ca_string(truncated); });
  CHECK(contains(e1, "line "));
  CHECK(contains(e1, "table entry"));

  const std::string bad_entry =
      "ca v1\nstates 2\nradius 1\nrule table\n0 1 0 2 0 0 0 0\n";
  const std::string e2 =
      error_of([&] { parse_ca_string(bad_entry); });
  CHECK(contains(e2, "line 5"));
  CHECK(contains(e2, "out of range"));

  const std::string mismatch =
      "ca v1\nstates 3\nradius 1\nrule additive 2\n";
  const std::string e3 =
      error_of([&] { parse_ca_string(mismatch); });
  CHECK(contains(e3, "header says"));

  CHECK_THROWS_AS(parse_ca_string("ca v2\n"), ParseError);
  CHECK_THROWS_AS(
      parse_ca_string("ca v1\nstates 2\nradius 1\nrule magic\n"),
      ParseError);
}

TEST_CASE("configurations parse from period-colon-word text") {
  const PeriodicConfig c = parse_config("3 : 0 1 1", 2);
  CHECK(c.n == 2);
  CHECK(c.word == std::vector<State>{0, 1, 1});
  CHECK(format_config(c) == "3 : 0 1 1");

  CHECK_THROWS_AS(parse_config("3 : 0 1", 2), ParseError);
  CHECK_THROWS_AS(parse_config("3 : 0 1 2", 2), ParseError);
  CHECK_THROWS_AS(parse_config("3 0 1 1", 2), ParseError);
  CHECK_THROWS_AS(parse_config("1 : 0 1", 2), ParseError);
  CHECK_THROWS_AS(parse_config("0 :", 2), ParseError);
}

TEST_CASE("transforms parse from m:T:s with a mirror prefix") {
  CHECK(parse_transform("2:3:-1") == Transform{2, 1, 3, -1});
  CHECK(parse_transform("~2:1:0") == Transform{2, -1, 1, 0});
  CHECK(parse_transform("1:1:0") == identity_transform());
  CHECK(format_transform({2, -1, 1, 0}) == "~2:1:0");
  CHECK(format_transform({3, 1, 2, -4}) == "3:2:-4");
  for (const std::string s : {"2:3", "2:3:1:0", "0:1:0", "2:0:0", "a:1:0"})
    CHECK_THROWS_AS(parse_transform(s), ParseError);
}

TEST_CASE("state maps parse and validate in one step") {
  const StateMap m = parse_map("0 2", 2, 4, MapRole::Injection);
  CHECK(m.table == std::vector<State>{0, 2});
  CHECK_THROWS_AS(parse_map("0 0", 2, 4, MapRole::Injection), DomainError);
  CHECK_THROWS_AS(parse_map("0 4", 2, 4, MapRole::Injection), ParseError);
  CHECK_THROWS_AS(parse_map("0", 2, 4, MapRole::Injection), ParseError);
  CHECK_THROWS_AS(parse_map("0 2 1", 2, 4, MapRole::Injection), ParseError);
}
