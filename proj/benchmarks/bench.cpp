#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include <bulkca/automaton.hpp>
#include <bulkca/morphism.hpp>
#include <bulkca/property.hpp>
#include <bulkca/simsearch.hpp>
#include <bulkca/transform.hpp>
#include <bulkca/zoo.hpp>

namespace {

using namespace bulkca;

PeriodicConfig ramp(int n, int cells) {
  PeriodicConfig c{n, std::vector<State>(static_cast<std::size_t>(cells))};
  for (int i = 0; i < cells; ++i)
    c.word[static_cast<std::size_t>(i)] =
        static_cast<State>((i * 2654435761u) % static_cast<unsigned>(n));
  return c;
}

void bm_step_table(benchmark::State& state) {
  const Automaton a = additive(2);
  PeriodicConfig c = ramp(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    c = step(a, c);
    benchmark::DoNotOptimize(c.word.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_step_table)->Arg(1 << 10)->Arg(1 << 14);

void bm_step_lazy_rescaled(benchmark::State& state) {
  // Padded past the materialization limit, so every cell runs the
  // unpack-iterate-pack path.
  const Automaton big = canonicalize_radius(additive(2), 12);
  const Automaton at = apply_transform(big, Transform{2, 1, 2, 1});
  PeriodicConfig c = ramp(at.n, 512);
  for (auto _ : state) {
    c = step(at, c);
    benchmark::DoNotOptimize(c.word.data());
  }
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(bm_step_lazy_rescaled);

void bm_apply_transform_table(benchmark::State& state) {
  const Automaton a = additive(3);
  for (auto _ : state) {
    const Automaton at = apply_transform(a, Transform{2, 1, 2, 1});
    benchmark::DoNotOptimize(at.table.data());
  }
}
BENCHMARK(bm_apply_transform_table);

void bm_surjectivity_eca(benchmark::State& state) {
  std::vector<Automaton> rules;
  rules.reserve(256);
  for (int rule = 0; rule < 256; ++rule) {
    std::vector<State> tbl(8);
    for (int w = 0; w < 8; ++w)
      tbl[static_cast<std::size_t>(w)] = static_cast<State>((rule >> w) & 1);
    rules.push_back(make_table_automaton(2, 1, std::move(tbl)));
  }
  for (auto _ : state) {
    int holds = 0;
    for (const Automaton& e : rules)
      holds += is_surjective(e).status == Status::Holds;
    benchmark::DoNotOptimize(holds);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(bm_surjectivity_eca);

void bm_find_subautomaton(benchmark::State& state) {
  ShiftProduct spa, spb;
  for (long long z : {0, 1, 2}) spa.factors.push_back({2, z});
  for (long long z : {0, 1, 2, 3}) spb.factors.push_back({2, z});
  const Automaton a = shift_product(spa);
  const Automaton b = shift_product(spb);
  for (auto _ : state) {
    const FindResult r = find_subautomaton(a, b);
    benchmark::DoNotOptimize(r.map);
  }
}
BENCHMARK(bm_find_subautomaton);

void bm_search_witness(benchmark::State& state) {
  ShiftProduct spa, spb;
  for (long long z : {0, 1, 3}) spa.factors.push_back({2, z});
  for (long long z : {0, 1, 2, 4}) spb.factors.push_back({2, z});
  const Automaton a = shift_product(spa);
  const Automaton b = shift_product(spb);
  SearchBounds bounds;
  bounds.max_m = 3;
  bounds.max_T = 3;
  bounds.max_group = 3;
  for (auto _ : state) {
    const SearchOutcome out = search(Relation::Injective, a, b, bounds);
    benchmark::DoNotOptimize(out.status);
  }
}
BENCHMARK(bm_search_witness);

}  // namespace

BENCHMARK_MAIN();
