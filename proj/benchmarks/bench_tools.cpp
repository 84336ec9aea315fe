#include <benchmark/benchmark.h>

#include "chaindrift/datagen.hpp"
#include "chaindrift/tools.hpp"

namespace {

void BM_knowledge_retrieve_cold(benchmark::State& state) {
  chaindrift::BundledEmbedder embedder;
  chaindrift::mcp::KnowledgeTool knowledge(chaindrift::mcp::generate_corpus(), embedder);
  const auto& questions = chaindrift::mcp::seed_questions();
  std::size_t i = 0;
  for (auto _ : state) {
    // rotate queries so the per-query cache stays cold-ish
    benchmark::DoNotOptimize(knowledge.retrieve(questions[i++ % questions.size()], 3));
  }
}
BENCHMARK(BM_knowledge_retrieve_cold);

void BM_knowledge_retrieve_cached(benchmark::State& state) {
  chaindrift::BundledEmbedder embedder;
  chaindrift::mcp::KnowledgeTool knowledge(chaindrift::mcp::generate_corpus(), embedder);
  knowledge.retrieve("What is the capital of France?", 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knowledge.retrieve("What is the capital of France?", 3));
  }
}
BENCHMARK(BM_knowledge_retrieve_cached);

void BM_dispatch_price(benchmark::State& state) {
  chaindrift::BundledEmbedder embedder;
  chaindrift::mcp::KnowledgeTool knowledge(chaindrift::mcp::generate_corpus(), embedder);
  chaindrift::mcp::FinancialTool financial(chaindrift::mcp::generate_snapshot());
  const auto registry = chaindrift::mcp::make_default_registry(knowledge, financial);
  chaindrift::mcp::ToolCallLog log;

  chaindrift::mcp::RpcRequest request;
  request.method = chaindrift::mcp::kPriceMethod;
  request.id = 1;
  request.params = chaindrift::mcp::json{{"symbol", "AAPL"}};

  for (auto _ : state) {
    benchmark::DoNotOptimize(chaindrift::mcp::dispatch(request, registry, log));
  }
}
BENCHMARK(BM_dispatch_price);

}  // namespace
