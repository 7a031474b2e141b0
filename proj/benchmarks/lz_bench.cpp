#include <benchmark/benchmark.h>

#include "lezter/lz.hpp"
#include "lezter/random.hpp"

namespace {

lezter::SymbolSequence random_sequence(std::size_t n, lezter::Symbol alphabet) {
  lezter::Rng rng(n * 31 + alphabet);
  std::vector<lezter::Symbol> v(n);
  for (auto& s : v) s = rng(alphabet);
  return {std::move(v), alphabet};
}

void BM_Lz76Binary(benchmark::State& state) {
  const auto seq = random_sequence(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lezter::lz76_word_count(seq));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lz76Binary)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

// Extended alphabet of a joint embedding with m = 8.
void BM_Lz76Extended(benchmark::State& state) {
  const auto seq = random_sequence(static_cast<std::size_t>(state.range(0)), lezter::Symbol{1} << 17);
  for (auto _ : state) benchmark::DoNotOptimize(lezter::lz76_word_count(seq));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lz76Extended)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

}  // namespace
