#include <doctest.h>

#include <vector>

#include <bulkca/automaton.hpp>
#include <bulkca/simsearch.hpp>
#include <bulkca/zoo.hpp>

using namespace bulkca;

namespace {

Automaton tracks(std::vector<long long> vectors) {
  ShiftProduct sp;
  for (long long z : vectors) sp.factors.push_back({2, z});
  return shift_product(sp);
}

}  // namespace

TEST_CASE("search returns the first witness in canonical cell order") {
  const SearchOutcome out =
      search(Relation::Injective, shift(2, 2), shift(2, 1), {});
  REQUIRE(out.status == Status::Holds);
  REQUIRE(out.witness);
  // s = 0 fails first, then the negative shift aligns the two rules.
  CHECK(out.witness->alpha == Transform{1, 1, 1, -1});
  CHECK(out.witness->group_t == 1);
  CHECK(out.witness->map.table == std::vector<State>{0, 1});
  CHECK(verify_witness(*out.witness, shift(2, 2), shift(2, 1)));
}

TEST_CASE("worker count never changes the outcome") {
  for (int jobs : {1, 2, 4}) {
    const SearchOutcome out =
        search(Relation::Injective, shift(2, 2), shift(2, 1), {}, jobs);
    REQUIRE(out.status == Status::Holds);
    REQUIRE(out.witness);
    CHECK(out.witness->alpha == Transform{1, 1, 1, -1});
    CHECK(out.witness->group_t == 1);
    CHECK(out.witness->map.table == std::vector<State>{0, 1});
    CHECK(out.stats.cells_total ==
          search(Relation::Injective, shift(2, 2), shift(2, 1), {})
              .stats.cells_total);
  }
}

TEST_CASE("three tracks embed into four by doubling the state code") {
  const Automaton a = tracks({0, 1, 2});
  const Automaton b = tracks({0, 1, 2, 3});
  const SearchOutcome out = search(Relation::Injective, a, b, {});
  REQUIRE(out.status == Status::Holds);
  REQUIRE(out.witness);
  CHECK(out.witness->alpha == identity_transform());
  CHECK(out.witness->group_t == 1);
  CHECK(out.witness->map.table ==
        std::vector<State>{0, 2, 4, 6, 8, 10, 12, 14});
  CHECK(verify_witness(*out.witness, a, b));
}

TEST_CASE("incommensurable track families only skip, never refute") {
  const Automaton a = tracks({0, 1, 2, 3});
  const Automaton b = tracks({0, 1, 2, 4});
  const SearchOutcome out = search(Relation::Injective, a, b, {});
  CHECK(out.status == Status::Unknown);
  CHECK(!out.witness);
  CHECK(out.stats.cells_skipped_cutoff > 0);
  CHECK(out.stats.cells_total ==
        out.stats.cells_searched + out.stats.cells_pruned_state_count +
            out.stats.cells_pruned_divisibility +
            out.stats.cells_pruned_quiescence +
            out.stats.cells_skipped_cutoff + out.stats.cells_skipped_guard);
}

TEST_CASE("state-count and divisibility pruning close hopeless cells") {
  const SearchOutcome out =
      search(Relation::Surjective, additive(3), additive(2), {});
  CHECK(out.status == Status::Unknown);
  CHECK(out.stats.cells_pruned_state_count > 0);
  CHECK(out.stats.cells_pruned_divisibility > 0);
}

TEST_CASE("quiescence pruning closes injective cells without fixed states") {
  const SearchOutcome out = search(Relation::Injective, additive(2),
                                   nontransitivity_gadget(5).first, {});
  CHECK(out.status == Status::Unknown);
  CHECK(out.stats.cells_pruned_quiescence > 0);
}

TEST_CASE("mixed search lands on the gadget's stable pair subset") {
  const SearchOutcome out = search(Relation::Mixed, shift(2, -1),
                                   nontransitivity_gadget(5).first, {});
  REQUIRE(out.status == Status::Holds);
  REQUIRE(out.witness);
  CHECK(out.witness->rel == Relation::Mixed);
  CHECK(out.witness->alpha == identity_transform());
  CHECK(out.witness->group_t == 1);
  CHECK(out.witness->subset == std::vector<State>{1, 2, 3, 4});
  CHECK(out.witness->map.table == std::vector<State>{0, 0, 1, 1});
  CHECK(verify_witness(*out.witness,
                       shift(2, -1), nontransitivity_gadget(5).first));
  CHECK(!out.witness->format().empty());
}

TEST_CASE("strong search pins the rescaling side") {
  const Automaton a = additive(2);
  const Automaton b = product(additive(2), shift(2, 1));
  const SearchOutcome out = search_strong(Relation::Injective, a, b, {});
  REQUIRE(out.status == Status::Holds);
  REQUIRE(out.witness);
  CHECK(out.witness->alpha == identity_transform());
  CHECK(out.witness->group_t == 1);
  CHECK(out.witness->map.table == std::vector<State>{0, 2});

  CHECK(search_strong(Relation::Injective, shift(2, 2), shift(2, 1), {})
            .status == Status::Unknown);
}

TEST_CASE("verify_witness rejects a corrupted witness") {
  SearchOutcome out =
      search(Relation::Injective, shift(2, 2), shift(2, 1), {});
  REQUIRE(out.witness);
  SimulationWitness bad = *out.witness;
  bad.alpha.s = 1;
  CHECK(!verify_witness(bad, shift(2, 2), shift(2, 1)));
}

TEST_CASE("search bounds are validated up front") {
  SearchBounds bad;
  bad.max_m = 0;
  CHECK_THROWS_AS(search(Relation::Injective, additive(2), additive(2), bad),
                  DomainError);
  SearchBounds neg;
  neg.max_shift = -1;
  CHECK_THROWS_AS(search(Relation::Injective, additive(2), additive(2), neg),
                  DomainError);
}
