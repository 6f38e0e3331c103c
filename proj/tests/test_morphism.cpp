#include <doctest.h>

#include <vector>

#include <bulkca/automaton.hpp>
#include <bulkca/morphism.hpp>
#include <bulkca/zoo.hpp>

#include "oracles.hpp"

using namespace bulkca;

namespace {

StateMap inj(std::vector<State> images, int target) {
  StateMap m;
  m.source_count = static_cast<int>(images.size());
  m.target_count = target;
  m.table = std::move(images);
  m.role = MapRole::Injection;
  return m;
}

StateMap surj(std::vector<State> images, int target) {
  StateMap m;
  m.source_count = static_cast<int>(images.size());
  m.target_count = target;
  m.table = std::move(images);
  m.role = MapRole::Surjection;
  return m;
}

}  // namespace

TEST_CASE("state maps validate their role") {
  CHECK_NOTHROW(inj({0, 2}, 4).validate());
  CHECK_THROWS_AS(inj({0, 0}, 4).validate(), DomainError);
  CHECK_NOTHROW(surj({0, 1, 1}, 2).validate());
  CHECK_THROWS_AS(surj({0, 0, 0}, 2).validate(), DomainError);
  CHECK_THROWS_AS(inj({0, 4}, 4).validate(), DomainError);
  CHECK_THROWS_AS(surj({0, 2}, 2).validate(), DomainError);

  const StateMap id = identity_map(3);
  CHECK(id.table == std::vector<State>{0, 1, 2});
  CHECK(id.role == MapRole::Bijection);

  const StateMap f = inj({1, 0}, 2);
  const StateMap g = inj({0, 3}, 4);
  const StateMap gf = compose_maps(f, g);
  CHECK(gf.table == std::vector<State>{3, 0});
  CHECK(gf.target_count == 4);
}

TEST_CASE("track inclusion embeds a factor into the product") {
  const Automaton a = additive(2);
  const Automaton b = product(additive(2), shift(2, 1));
  const StateMap iota = inj({0, 2}, 4);
  CheckReport rep;
  CHECK(check_subautomaton(a, b, iota, {}, &rep));
  CHECK(rep.exhaustive);
  CHECK(oracle::global_embedding(a, b, iota, 4));

  // Sending both states to the same track parity is no embedding.
  CHECK(!check_subautomaton(a, b, inj({1, 2}, 4)));
}

TEST_CASE("track projection is a quotient of the product") {
  const Automaton a = additive(2);
  const Automaton b = product(additive(2), shift(2, 1));
  CHECK(check_quotient(a, b, surj({0, 0, 1, 1}, 2)));
  CHECK(oracle::global_projection(a, b, surj({0, 0, 1, 1}, 2), 4));

  CheckReport rep;
  CHECK(!check_quotient(a, b, surj({0, 1, 0, 1}, 2), {}, &rep));
  REQUIRE(!rep.counterexample.empty());
  // The recorded window must replay as a genuine violation.
  const std::vector<State>& w = rep.counterexample;
  REQUIRE(w.size() == 3);
  std::vector<State> mapped(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) mapped[i] = w[i] % 2;
  CHECK(b.eval(w.data()) % 2 != a.eval(mapped.data()));
}

TEST_CASE("find_subautomaton returns the lexicographically least embedding") {
  const Automaton a = additive(2);
  const Automaton b = product(additive(2), shift(2, 1));
  const FindResult res = find_subautomaton(a, b);
  REQUIRE(res.map);
  CHECK(res.exhaustive);
  CHECK(res.map->table == std::vector<State>{0, 2});
  CHECK(oracle::global_embedding(a, b, *res.map, 4));

  CHECK(!find_subautomaton(additive(2), shift(2, 1)).map);
}

TEST_CASE("find_quotient returns the lexicographically least projection") {
  const Automaton a = additive(2);
  const Automaton b = product(additive(2), shift(2, 1));
  const FindResult res = find_quotient(a, b);
  REQUIRE(res.map);
  CHECK(res.map->table == std::vector<State>{0, 0, 1, 1});
  CHECK(oracle::global_projection(a, b, *res.map, 4));
}

TEST_CASE("find_isomorphism sees through a state relabeling") {
  const Automaton mx = delta_max(2);
  const Automaton mn =
      make_table_automaton(2, 1, {0, 0, 0, 0, 0, 0, 0, 1});
  const FindResult res = find_isomorphism(mx, mn);
  REQUIRE(res.map);
  CHECK(res.map->table == std::vector<State>{1, 0});

  const FindResult self = find_isomorphism(additive(2), additive(2));
  REQUIRE(self.map);
  CHECK(self.map->table == std::vector<State>{0, 1});

  CHECK(!find_isomorphism(additive(2), shift(2, 1)).map);
}

TEST_CASE("stable subsets of the gadget are the flip pairs and their union") {
  const Automaton g = nontransitivity_gadget(5).first;
  const auto subs = stable_subsets(g);
  REQUIRE(subs.size() == 4);
  CHECK(subs[0] == std::vector<State>{1, 2});
  CHECK(subs[1] == std::vector<State>{3, 4});
  CHECK(subs[2] == std::vector<State>{1, 2, 3, 4});
  CHECK(subs[3] == std::vector<State>{0, 1, 2, 3, 4});

  CHECK_THROWS_AS(stable_subsets(delta_max(21)), InfeasibleError);
}

TEST_CASE("restrict_to renumbers the subset in order") {
  const Automaton g = nontransitivity_gadget(5).first;
  const Automaton r = restrict_to(g, {1, 2, 3, 4});
  CHECK(r.n == 4);
  const std::vector<State> w = {0, 0, 0};  // original (1, 1, 1) -> 2
  CHECK(r.eval(w.data()) == 1);
  const std::vector<State> v = {0, 1, 2};  // original (1, 2, 3) -> 4
  CHECK(r.eval(v.data()) == 3);
  CHECK_THROWS_AS(restrict_to(g, {1, 3}), DomainError);
}

TEST_CASE("find_mixed lands on the first stable subset that projects") {
  const MixedResult res = find_mixed(shift(2, -1),
                                     nontransitivity_gadget(5).first);
  REQUIRE(res.witness);
  CHECK(res.exhaustive);
  CHECK(res.witness->subset == std::vector<State>{1, 2, 3, 4});
  CHECK(res.witness->pi.table == std::vector<State>{0, 0, 1, 1});
}

TEST_CASE("congruences are exactly the block-respecting partitions") {
  const Automaton b = product(additive(2), shift(2, 1));
  const auto parts = congruences_into(b, 2);

  auto contains = [&](const std::vector<int>& p) {
    for (const auto& q : parts)
      if (q == p) return true;
    return false;
  };
  CHECK(contains({0, 0, 1, 1}));
  CHECK(contains({0, 1, 0, 1}));

  // Every returned partition must be well defined on blocks.
  for (const auto& p : parts) {
    std::vector<State> w(3, 0);
    do {
      std::vector<State> v(3, 0);
      do {
        bool same = true;
        for (int i = 0; i < 3; ++i)
          if (p[w[static_cast<std::size_t>(i)]] !=
              p[v[static_cast<std::size_t>(i)]])
            same = false;
        if (same) CHECK(p[b.eval(w.data())] == p[b.eval(v.data())]);
      } while (next_window(v, b.n));
    } while (next_window(w, b.n));
  }

  CHECK(congruences_into(additive(2), 1) ==
        std::vector<std::vector<int>>{{0, 0}});
}

TEST_CASE("big shift tracks are compared through their exact neighborhoods") {
  ShiftProduct spa;
  spa.factors = {{2, 0}, {2, 1}, {2, 2}};
  ShiftProduct spb;
  spb.factors = {{2, 0}, {2, 1}, {2, 2}, {2, 3}};
  const Automaton a = shift_product(spa);
  const Automaton b = shift_product(spb);

  StateMap iota;
  iota.source_count = 8;
  iota.target_count = 16;
  iota.table = {0, 2, 4, 6, 8, 10, 12, 14};
  iota.role = MapRole::Injection;
  CheckReport rep;
  CHECK(check_subautomaton(a, b, iota, {}, &rep));
  CHECK(rep.exhaustive);
  // Full windows would need 8^7 scans; the track neighborhoods cut the
  // scan to the offsets the rules actually read.
  CHECK(rep.windows < (1ull << 16));
}

TEST_CASE("oversized lazy rules fall back to deterministic sampling") {
  const Automaton base = oracle::random_automaton(2, 1, 99);
  Automaton big = canonicalize_radius(base, 14);
  big.label.clear();
  CHECK(big.table_size() > kExhaustiveScanLimit);

  CheckReport rep;
  CHECK(check_subautomaton(big, big, identity_map(2, MapRole::Injection),
                           {}, &rep));
  CHECK(!rep.exhaustive);

  Automaton other = canonicalize_radius(oracle::random_automaton(2, 1, 100),
                                        14);
  CHECK(!check_subautomaton(big, other, identity_map(2, MapRole::Injection),
                            {}, &rep));
  REQUIRE(!rep.counterexample.empty());
}
