#pragma once

// The two deterministic MCP tools: knowledge retrieval over a cached corpus
// with precomputed embeddings, and financial data lookups from a market
// snapshot. With fixed data files, identical requests yield byte-identical
// results across runs.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "chaindrift/embeddings.hpp"
#include "chaindrift/registry.hpp"

namespace chaindrift::mcp {

inline constexpr std::array<const char*, 8> kDomains = {
    "Science", "History", "Technology", "Arts",
    "Sports",  "Geography", "Literature", "Mathematics"};

inline constexpr std::array<const char*, 10> kSymbols = {
    "AAPL", "MSFT", "GOOGL", "AMZN", "TSLA", "META", "NVDA", "JPM", "V", "JNJ"};

struct CorpusEntry {
  std::string id;
  std::string domain;
  std::string text;
};

std::vector<CorpusEntry> load_corpus_jsonl(const std::string& path);
void write_corpus_jsonl(const std::string& path, std::span<const CorpusEntry> entries);

struct PriceBar {
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  std::int64_t volume = 0;
  std::string timestamp;  // stored, never read from the clock
};

struct MarketSnapshot {
  // symbol -> ISO date -> bar; std::map keeps serialization deterministic
  std::map<std::string, std::map<std::string, PriceBar>> prices;

  void validate() const;  // low <= open, close <= high; known symbols
  json to_json() const;
  static MarketSnapshot from_json(const json& j);
};

MarketSnapshot load_snapshot(const std::string& path);
void write_snapshot(const std::string& path, const MarketSnapshot& snapshot);

class KnowledgeTool {
 public:
  // Embeds the corpus up front; when sidecar_path is given, a matching
  // matrix is loaded from it, otherwise one is computed and written there.
  KnowledgeTool(std::vector<CorpusEntry> corpus, EmbeddingProvider& embedder,
                std::optional<std::string> sidecar_path = {});

  struct Retrieval {
    std::vector<std::string> texts;
    double top_similarity = 0.0;
  };

  // top_k texts by descending cosine similarity, ties broken by ascending
  // corpus id; cached by (query, top_k).
  Retrieval retrieve(const std::string& query, int top_k = 3);

  const std::vector<CorpusEntry>& corpus() const { return corpus_; }
  const std::vector<EmbeddingVector>& matrix() const { return matrix_; }

 private:
  std::vector<CorpusEntry> corpus_;
  EmbeddingProvider& embedder_;
  std::vector<EmbeddingVector> matrix_;
  mutable std::shared_mutex cache_mutex_;
  std::map<std::pair<std::string, int>, Retrieval> cache_;
};

class FinancialTool {
 public:
  explicit FinancialTool(MarketSnapshot snapshot);

  // Throws RpcFault(kInvalidParams) naming the missing key.
  json get_price(const std::string& symbol, const std::string& date) const;

  // Trend over the trailing `days` calendar days of the snapshot:
  // "up" iff last close > first close, plus the percentage change.
  json get_trend(const std::string& symbol, int days) const;

  const MarketSnapshot& snapshot() const { return snapshot_; }

 private:
  MarketSnapshot snapshot_;
};

inline constexpr const char* kKnowledgeMethod = "knowledge_retrieval";
inline constexpr const char* kPriceMethod = "get_stock_price";
inline constexpr const char* kTrendMethod = "get_stock_trend";
inline constexpr const char* kDefaultPriceDate = "2024-01-15";

// Registers knowledge_retrieval(query, top_k=3), get_stock_price(symbol,
// date="2024-01-15") and get_stock_trend(symbol, days=30). The knowledge
// tool reports uncertainty 1 - top cosine similarity (clipped to [0,1]);
// the financial tool reports a fixed 0.01.
ToolRegistry make_default_registry(KnowledgeTool& knowledge, FinancialTool& financial);

}  // namespace chaindrift::mcp
