#pragma once

// Unit-norm text embeddings behind a pluggable provider contract.
//
// The bundled provider hashes the token multiset into a fixed number of
// buckets and L2-normalizes, so it is a pure function of the tokens: cheap,
// dimension-stable, and bitwise reproducible. An HTTP client provider covers
// external encoders. Empty or whitespace-only text maps to an explicit
// all-zero sentinel whose distance against anything is pinned to 1.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

namespace chaindrift {

class FactSet;

struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dim() const { return values.size(); }
  bool is_zero() const;
  double norm() const;

  static EmbeddingVector zero(std::size_t dim) { return {std::vector<float>(dim, 0.0f)}; }
};

struct ProviderDescriptor {
  std::string name;
  std::size_t dim = 0;
  bool deterministic = false;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual ProviderDescriptor descriptor() const = 0;
  virtual EmbeddingVector embed_text(const std::string& text) = 0;
  // Default: embeds one by one. Providers with batched transports override.
  virtual std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts);
};

inline constexpr std::size_t kBundledDim = 256;
inline constexpr std::uint64_t kBundledHashSeed = 0x4D4350;  // "MCP"

// Hashed bag-of-tokens embedder; order-invariant by construction.
class BundledEmbedder final : public EmbeddingProvider {
 public:
  explicit BundledEmbedder(std::size_t dim = kBundledDim, std::uint64_t seed = kBundledHashSeed);
  ProviderDescriptor descriptor() const override;
  EmbeddingVector embed_text(const std::string& text) override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// In-memory cache in front of another provider. Reads are concurrent,
// writes serialized; unbounded within a run.
class CachingEmbedder final : public EmbeddingProvider {
 public:
  explicit CachingEmbedder(std::shared_ptr<EmbeddingProvider> inner);
  ProviderDescriptor descriptor() const override;
  EmbeddingVector embed_text(const std::string& text) override;
  std::size_t size() const;

 private:
  std::shared_ptr<EmbeddingProvider> inner_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, EmbeddingVector> cache_;
};

// Client for an external embedding HTTP service:
// POST {"texts": [...]} -> {"embeddings": [[...], ...]}.
class ExternalEmbedder final : public EmbeddingProvider {
 public:
  ExternalEmbedder(std::string endpoint, std::chrono::milliseconds timeout, std::size_t dim);
  ProviderDescriptor descriptor() const override;
  EmbeddingVector embed_text(const std::string& text) override;
  std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::size_t dim_;
};

// One-shot form of the external call; retries once on transient transport
// failure, renormalizes every row, preserves order.
std::vector<EmbeddingVector> external_embed_batch(const std::vector<std::string>& texts,
                                                  const std::string& endpoint,
                                                  std::chrono::milliseconds timeout,
                                                  std::size_t expected_dim);

// (1 - cos(a, b)) / 2; returns 1 if either side is the zero sentinel.
double embedding_distance(const EmbeddingVector& a, const EmbeddingVector& b);

// Weighted (or plain) mean of per-fact embeddings, renormalized to unit
// norm; empty set maps to the zero sentinel.
EmbeddingVector embed_fact_set(const FactSet& fs, EmbeddingProvider& provider,
                               bool weighted = true);

// Corpus embedding sidecar: little-endian float32 row-major matrix with an
// 8-byte header {u32 rows, u32 dim}.
void write_embedding_matrix(const std::string& path, const std::vector<EmbeddingVector>& rows);
std::vector<EmbeddingVector> read_embedding_matrix(const std::string& path);

}  // namespace chaindrift
