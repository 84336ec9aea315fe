#include <benchmark/benchmark.h>

#include "chaindrift/chain.hpp"
#include "chaindrift/datagen.hpp"

namespace {

void BM_run_chain_score(benchmark::State& state) {
  chaindrift::ChainConfig config;
  config.horizon = static_cast<int>(state.range(0));
  std::uint64_t index = 0;
  for (auto _ : state) {
    config.chain_index = index++;
    benchmark::DoNotOptimize(chaindrift::run_chain(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_run_chain_score)->Arg(10)->Arg(30)->Arg(60);

void BM_run_chain_text(benchmark::State& state) {
  auto embedder = std::make_shared<chaindrift::CachingEmbedder>(
      std::make_shared<chaindrift::BundledEmbedder>());
  chaindrift::mcp::KnowledgeTool knowledge(chaindrift::mcp::generate_corpus(), *embedder);

  chaindrift::ChainConfig config;
  config.mode = chaindrift::ChainMode::Text;
  config.horizon = static_cast<int>(state.range(0));
  std::uint64_t index = 0;
  for (auto _ : state) {
    config.chain_index = index++;
    benchmark::DoNotOptimize(chaindrift::run_chain(config, &knowledge, embedder.get()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_run_chain_text)->Arg(10)->Arg(30);

}  // namespace
