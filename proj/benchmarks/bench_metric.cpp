#include <benchmark/benchmark.h>

#include "chaindrift/bounds.hpp"
#include "chaindrift/embeddings.hpp"
#include "chaindrift/metric.hpp"

namespace {

const std::string kRef =
    "The speed of light in vacuum is approximately 299,792,458 m/s. "
    "The french revolution began in the year 1789. "
    "The molar mass of oxygen is approximately 15.999 grams per mole.";
const std::string kObs =
    "The speed of light in vacuum remains roughly 299,792,458 m/s. "
    "The french revolution started in the year 1789. "
    "The capital city of France is Paris.";

void BM_extract_facts(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(chaindrift::extract_facts(kRef));
  }
}
BENCHMARK(BM_extract_facts);

void BM_hybrid_distortion(benchmark::State& state) {
  chaindrift::BundledEmbedder embedder;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chaindrift::hybrid_distortion(kRef, kObs, 0.5, embedder));
  }
}
BENCHMARK(BM_hybrid_distortion);

void BM_bundled_embed(benchmark::State& state) {
  chaindrift::BundledEmbedder embedder;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embedder.embed_text(kRef));
  }
}
BENCHMARK(BM_bundled_embed);

void BM_build_envelope(benchmark::State& state) {
  chaindrift::DependencyParams params;
  params.beta = 0.7;
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chaindrift::build_envelope(horizon, 0.5, params, 0.05));
  }
}
BENCHMARK(BM_build_envelope)->Arg(10)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
