#include "chaindrift/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "chaindrift/errors.hpp"
#include "chaindrift/metric.hpp"
#include "chaindrift/text.hpp"

#include <httplib.h>

namespace chaindrift {

namespace {

constexpr double kZeroNormEps = 1e-12;

// seeded FNV-1a over the token bytes
std::uint64_t hash_token(const std::string& token, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ seed;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

EmbeddingVector normalized_or_zero(std::vector<double> acc) {
  double norm_sq = 0.0;
  for (double v : acc) norm_sq += v * v;
  EmbeddingVector out;
  out.values.resize(acc.size(), 0.0f);
  if (norm_sq <= kZeroNormEps) return out;  // zero sentinel
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out.values[i] = static_cast<float>(acc[i] * inv);
  }
  return out;
}

void append_u32_le(std::string& buf, std::uint32_t v) {
  buf.push_back(static_cast<char>(v & 0xff));
  buf.push_back(static_cast<char>((v >> 8) & 0xff));
  buf.push_back(static_cast<char>((v >> 16) & 0xff));
  buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

bool EmbeddingVector::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](float v) { return v == 0.0f; });
}

double EmbeddingVector::norm() const {
  double s = 0.0;
  for (float v : values) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

std::vector<EmbeddingVector> EmbeddingProvider::embed_batch(
    const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_text(t));
  return out;
}

BundledEmbedder::BundledEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim_ < 2) throw ContractError("BundledEmbedder: dim must be >= 2");
}

ProviderDescriptor BundledEmbedder::descriptor() const {
  return {"bundled-hash", dim_, true};
}

EmbeddingVector BundledEmbedder::embed_text(const std::string& input) {
  std::vector<double> acc(dim_, 0.0);
  for (const auto& token : text::tokenize(input)) {
    acc[hash_token(token, seed_) % dim_] += 1.0;
  }
  return normalized_or_zero(std::move(acc));
}

CachingEmbedder::CachingEmbedder(std::shared_ptr<EmbeddingProvider> inner)
    : inner_(std::move(inner)) {}

ProviderDescriptor CachingEmbedder::descriptor() const { return inner_->descriptor(); }

EmbeddingVector CachingEmbedder::embed_text(const std::string& input) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(input); it != cache_.end()) return it->second;
  }
  EmbeddingVector v = inner_->embed_text(input);
  {
    std::unique_lock lock(mutex_);
    cache_.emplace(input, v);
  }
  return v;
}

std::size_t CachingEmbedder::size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

ExternalEmbedder::ExternalEmbedder(std::string endpoint, std::chrono::milliseconds timeout,
                                   std::size_t dim)
    : endpoint_(std::move(endpoint)), timeout_(timeout), dim_(dim) {}

ProviderDescriptor ExternalEmbedder::descriptor() const {
  return {"external:" + endpoint_, dim_, false};
}

EmbeddingVector ExternalEmbedder::embed_text(const std::string& input) {
  bool blank = true;
  for (unsigned char c : input) {
    if (std::isspace(c) == 0) {
      blank = false;
      break;
    }
  }
  if (blank) return EmbeddingVector::zero(dim_);
  return embed_batch({input}).front();
}

std::vector<EmbeddingVector> ExternalEmbedder::embed_batch(
    const std::vector<std::string>& texts) {
  return external_embed_batch(texts, endpoint_, timeout_, dim_);
}

std::vector<EmbeddingVector> external_embed_batch(const std::vector<std::string>& texts,
                                                  const std::string& endpoint,
                                                  std::chrono::milliseconds timeout,
                                                  std::size_t expected_dim) {
  if (texts.empty()) throw ContractError("external_embed_batch: text list must be nonempty");

  // split "scheme://host:port/path" into client base and request path
  std::string base = endpoint;
  std::string path = "/";
  const auto scheme_end = endpoint.find("://");
  if (scheme_end != std::string::npos) {
    const auto slash = endpoint.find('/', scheme_end + 3);
    if (slash != std::string::npos) {
      base = endpoint.substr(0, slash);
      path = endpoint.substr(slash);
    }
  }

  const std::string body = nlohmann::json{{"texts", texts}}.dump();

  httplib::Result res;
  for (int attempt = 0; attempt < 2; ++attempt) {
    httplib::Client client(base);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    res = client.Post(path, body, "application/json");
    if (res) break;  // transport succeeded; status checked below
  }
  if (!res) {
    throw ProviderError("embedding service unreachable at " + endpoint + ": " +
                        httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderError("embedding service returned status " + std::to_string(res->status));
  }

  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("embedding service returned non-JSON body: ") + e.what());
  }
  if (!parsed.is_object() || !parsed.contains("embeddings") ||
      !parsed["embeddings"].is_array()) {
    throw ProviderError("embedding service response missing \"embeddings\" array");
  }
  const auto& rows = parsed["embeddings"];
  if (rows.size() != texts.size()) {
    throw ProviderError("embedding count mismatch: expected " + std::to_string(texts.size()) +
                        ", got " + std::to_string(rows.size()));
  }

  std::vector<EmbeddingVector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw ProviderError("embedding row is not an array");
    std::vector<double> acc;
    acc.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) throw ProviderError("embedding row contains a non-number");
      acc.push_back(v.get<double>());
    }
    if (expected_dim != 0 && acc.size() != expected_dim) {
      throw ProviderError("embedding dim mismatch: expected " + std::to_string(expected_dim) +
                          ", got " + std::to_string(acc.size()));
    }
    out.push_back(normalized_or_zero(std::move(acc)));
  }
  return out;
}

double embedding_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.is_zero() || b.is_zero()) return 1.0;
  if (a.dim() != b.dim()) {
    throw ContractError("embedding_distance: dimension mismatch (" + std::to_string(a.dim()) +
                        " vs " + std::to_string(b.dim()) + ")");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += static_cast<double>(a.values[i]) * static_cast<double>(b.values[i]);
  }
  const double na = a.norm();
  const double nb = b.norm();
  double cosine = dot / (na * nb);
  cosine = std::clamp(cosine, -1.0, 1.0);
  return (1.0 - cosine) / 2.0;
}

EmbeddingVector embed_fact_set(const FactSet& fs, EmbeddingProvider& provider, bool weighted) {
  const std::size_t dim = provider.descriptor().dim;
  if (fs.empty()) return EmbeddingVector::zero(dim);

  std::vector<double> acc(dim, 0.0);
  double total = 0.0;
  for (const auto& [surface, w] : fs.weights) total += w;
  const bool use_weights = weighted && total > 0.0;

  for (const auto& [surface, w] : fs.weights) {
    const double coeff = use_weights ? w / total : 1.0 / static_cast<double>(fs.size());
    if (coeff == 0.0) continue;
    const EmbeddingVector v = provider.embed_text(surface);
    if (v.dim() != dim) {
      throw ProviderError("embed_fact_set: provider returned dim " + std::to_string(v.dim()) +
                          ", expected " + std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim; ++i) acc[i] += coeff * static_cast<double>(v.values[i]);
  }
  return normalized_or_zero(std::move(acc));
}

void write_embedding_matrix(const std::string& path, const std::vector<EmbeddingVector>& rows) {
  const std::uint32_t n_rows = static_cast<std::uint32_t>(rows.size());
  const std::uint32_t dim = rows.empty() ? 0 : static_cast<std::uint32_t>(rows.front().dim());
  for (const auto& r : rows) {
    if (r.dim() != dim) throw ContractError("write_embedding_matrix: ragged rows");
  }

  std::string buf;
  buf.reserve(8 + static_cast<std::size_t>(n_rows) * dim * 4);
  append_u32_le(buf, n_rows);
  append_u32_le(buf, dim);
  for (const auto& r : rows) {
    for (float v : r.values) {
      std::uint32_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      append_u32_le(buf, bits);
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open embedding sidecar for writing: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw ConfigError("short write to embedding sidecar: " + path);
}

std::vector<EmbeddingVector> read_embedding_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open embedding sidecar: " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 8) throw ConfigError("embedding sidecar truncated: " + path);

  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  const std::uint32_t n_rows = read_u32_le(p);
  const std::uint32_t dim = read_u32_le(p + 4);
  const std::size_t expected = 8 + static_cast<std::size_t>(n_rows) * dim * 4;
  if (buf.size() != expected) {
    throw ConfigError("embedding sidecar size mismatch: " + path);
  }

  std::vector<EmbeddingVector> rows(n_rows);
  std::size_t offset = 8;
  for (auto& row : rows) {
    row.values.resize(dim);
    for (std::uint32_t d = 0; d < dim; ++d) {
      const std::uint32_t bits = read_u32_le(p + offset);
      float v;
      std::memcpy(&v, &bits, sizeof v);
      row.values[d] = v;
      offset += 4;
    }
  }
  return rows;
}

}  // namespace chaindrift
