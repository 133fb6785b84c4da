#include <benchmark/benchmark.h>

#include <filesystem>

#include "bloomtax/avca.hpp"
#include "bloomtax/json_io.hpp"
#include "bloomtax/similarity.hpp"
#include "bloomtax/wordnet_store.hpp"

namespace {

const std::filesystem::path kData = BLOOMTAX_DATA_DIR;

const bloomtax::LexicalStore& store() {
  static const auto s = bloomtax::load_database(kData / "wordnet");
  return s;
}

const bloomtax::TaxonomyRegistry& registry() {
  static const auto r = bloomtax::registry_from(bloomtax::load_consensus(kData / "verbsets" / "cognitive_consensus.json"));
  return r;
}

void BM_LoadDatabase(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bloomtax::load_database(kData / "wordnet"));
}
BENCHMARK(BM_LoadDatabase)->Unit(benchmark::kMillisecond);

void BM_WupWord(benchmark::State& state) {
  const auto& s = store();
  for (auto _ : state) benchmark::DoNotOptimize(bloomtax::wup_word(s, "write", "dramatize"));
}
BENCHMARK(BM_WupWord);

void BM_WupWordPolysemous(benchmark::State& state) {
  const auto& s = store();
  for (auto _ : state) benchmark::DoNotOptimize(bloomtax::wup_word(s, "run", "take"));
}
BENCHMARK(BM_WupWordPolysemous);

void BM_ClassifyVerb(benchmark::State& state) {
  const auto& s = store();
  const auto& r = registry();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bloomtax::classify_verb(s, r, "manipulate", bloomtax::DomainName::cognitive));
  }
}
BENCHMARK(BM_ClassifyVerb)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
